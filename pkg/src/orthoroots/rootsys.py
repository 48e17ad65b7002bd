"""Simply laced root systems of types D_n (n even), E7 and E8.

Roots live in the simple-root basis as integer tuples.  Every root system
also carries a Euclidean realization used for matchings, Fano labels,
sign matrices and polynomial expansions.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import ConfigError, InvariantViolation, UsageError

Vector = tuple[int, ...]

SUPPORTED = ("D4", "D6", "D8", "D10", "E7", "E8")

# Bits reserved per coefficient when a root is packed into one integer.
# E8 coefficients are at most 6, so sums of four roots stay below 2**5.
PACK_BITS = 8


@dataclass(frozen=True, order=True)
class SystemType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family == "D":
            if self.rank < 4 or self.rank % 2:
                raise ConfigError(f"type D needs an even rank >= 4, got {self.rank}")
        elif self.family in ("E7", "E8"):
            if self.rank != int(self.family[1]):
                raise ConfigError(f"{self.family} has rank {self.family[1]}, got {self.rank}")
        else:
            raise ConfigError(f"unsupported family {self.family!r}")

    @classmethod
    def parse(cls, text: str) -> "SystemType":
        m = re.fullmatch(r"\s*([DdEe])(\d+)\s*", str(text))
        if not m:
            raise ConfigError(f"cannot parse system type {text!r}")
        letter, rank = m.group(1).upper(), int(m.group(2))
        if letter == "E":
            return cls(f"E{rank}", rank)
        return cls("D", rank)

    @property
    def name(self) -> str:
        return f"D{self.rank}" if self.family == "D" else self.family

    @property
    def is_type_d(self) -> bool:
        return self.family == "D"

    @property
    def k(self) -> int:
        """Half the rank in type D."""
        if not self.is_type_d:
            raise UsageError("k is only defined in type D")
        return self.rank // 2

    @property
    def coxeter_number(self) -> int:
        return {"E7": 18, "E8": 30}.get(self.family, 2 * self.rank - 2)

    @property
    def quadruple_count(self) -> int:
        """Number M of coplanar quadruples in every positive n-root."""
        if self.is_type_d:
            return self.k * (self.k - 1) // 2
        return {"E7": 7, "E8": 14}[self.family]

    def __str__(self):
        return self.name


def dynkin_edges(stype: SystemType) -> list[tuple[int, int]]:
    """Edges of the Dynkin diagram with 1-based node labels."""
    n = stype.rank
    if stype.is_type_d:
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    if stype.family == "E7":
        return [(i, i + 1) for i in range(1, 6)] + [(3, 7)]
    return [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]


def simple_embedding(stype: SystemType) -> list[Vector]:
    """Euclidean coordinates of the simple roots.

    Type D uses e_1..e_n with the usual form.  E7 uses coordinates e_0..e_7
    and E8 uses e_1..e_8; for both the bilinear form is a quarter of the
    Euclidean product, so every coordinate is an integer.
    """
    n = stype.rank

    def unit(size, pairs):
        v = [0] * size
        for pos, val in pairs:
            v[pos] += val
        return tuple(v)

    if stype.is_type_d:
        simple = [unit(n, [(i, 1), (i + 1, -1)]) for i in range(n - 1)]
        simple.append(unit(n, [(n - 2, 1), (n - 1, 1)]))
        return simple
    if stype.family == "E7":
        simple = [unit(8, [(i, 2), (i + 1, -2)]) for i in range(1, 7)]
        simple.append((-1, -1, -1, -1, 1, 1, 1, 1))
        return simple
    simple = [(1, -1, -1, -1, -1, -1, -1, 1), unit(8, [(0, 2), (1, 2)])]
    simple += [unit(8, [(i - 2, 2), (i - 3, -2)]) for i in range(3, 9)]
    return simple


def euclidean_scale(stype: SystemType) -> Fraction:
    return Fraction(1) if stype.is_type_d else Fraction(1, 4)


def gram_matrix(stype: SystemType) -> tuple[tuple[int, ...], ...]:
    n = stype.rank
    g = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in dynkin_edges(stype):
        g[a - 1][b - 1] = g[b - 1][a - 1] = -1
    return tuple(tuple(r) for r in g)


def pack(v: Vector) -> int:
    """Pack a nonnegative coefficient vector into one integer."""
    out = 0
    for i, c in enumerate(v):
        out |= c << (PACK_BITS * i)
    return out


def is_positive(v: Vector) -> bool:
    return any(v) and all(c >= 0 for c in v)


def abs_root(v: Vector) -> tuple[Vector, int]:
    """Return (|v|, sign) where |v| is the positive one of v and -v."""
    if any(c < 0 for c in v):
        return tuple(-c for c in v), -1
    return v, 1


@dataclass(frozen=True, eq=False)
class RootSystem:
    stype: SystemType
    gram: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Vector, ...]
    heights: tuple[int, ...]
    highest: int
    embedding: tuple[tuple[Fraction, ...], ...]
    simple_ids: tuple[int, ...]
    index: dict = field(repr=False, compare=False)
    pairing: tuple = field(repr=False, compare=False)
    orth: tuple = field(repr=False, compare=False)
    reflection: tuple = field(repr=False, compare=False)
    reflection_sign: tuple = field(repr=False, compare=False)
    packed: tuple = field(repr=False, compare=False)
    packed_index: dict = field(repr=False, compare=False)
    embedding_index: dict = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.stype.rank

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    def _check(self, v) -> Vector:
        v = tuple(v)
        if len(v) != self.rank:
            raise UsageError(f"vector of length {len(v)} in a rank {self.rank} lattice")
        return v

    def bilinear(self, a, b) -> int:
        a, b = self._check(a), self._check(b)
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(self.rank) if a[i] for j in range(self.rank) if b[j])

    def reflect(self, mirror, target) -> Vector:
        mirror, target = self._check(mirror), self._check(target)
        c = self.bilinear(mirror, target)
        return tuple(t - c * m for t, m in zip(target, mirror))

    def simple_root(self, i: int) -> Vector:
        if not 1 <= i <= self.rank:
            raise UsageError(f"simple reflection index {i} outside 1..{self.rank}")
        return tuple(int(j == i - 1) for j in range(self.rank))

    def act_word(self, word, target) -> Vector:
        """Apply s_{i_1} s_{i_2} ... s_{i_r} to target (rightmost letter first)."""
        v = self._check(target)
        for i in reversed(list(word)):
            v = self.reflect(self.simple_root(i), v)
        return v

    def root_id(self, v) -> int:
        """ID of the positive root |v|; raises if v is not a root."""
        pos, _ = abs_root(self._check(v))
        try:
            return self.index[pos]
        except KeyError:
            raise UsageError(f"{v} is not a root") from None

    def is_root(self, v) -> bool:
        v = self._check(v)
        return any(v) and abs_root(v)[0] in self.index

    def height(self, v) -> int:
        return sum(self._check(v))

    def embed(self, v) -> tuple[Fraction, ...]:
        """Euclidean coordinates of a lattice vector."""
        v = self._check(v)
        simple = simple_embedding(self.stype)
        dim = len(simple[0])
        return tuple(Fraction(sum(c * s[d] for c, s in zip(v, simple))) for d in range(dim))

    def from_embedding(self, coords) -> int:
        """ID of the positive root with the given Euclidean coordinates (up to sign)."""
        key = tuple(Fraction(c) for c in coords)
        if key in self.embedding_index:
            return self.embedding_index[key]
        neg = tuple(-c for c in key)
        if neg in self.embedding_index:
            return self.embedding_index[neg]
        raise UsageError(f"{coords} is not the embedding of a root")

    def simple_index_of(self, root_id: int) -> int | None:
        """1-based simple index of a root ID, or None if not simple."""
        try:
            return self.simple_ids.index(root_id) + 1
        except ValueError:
            return None

    def highest_root(self) -> Vector:
        return self.positive_roots[self.highest]

    def to_json_dict(self) -> dict:
        return {
            "type": self.stype.name,
            "rank": self.rank,
            "gram": [list(r) for r in self.gram],
            "roots": [list(r) for r in self.positive_roots],
            "heights": list(self.heights),
            "embedding": [[f"{c.numerator}/{c.denominator}" for c in e] for e in self.embedding],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))


def _enumerate_positive(gram, n) -> list[Vector]:
    simple = [tuple(int(j == i) for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                c = sum(gram[i][j] * v[j] for j in range(n))
                if c < 0:
                    w = list(v)
                    w[i] -= c
                    w = tuple(w)
                    if w not in found:
                        found.add(w)
                        nxt.append(w)
        frontier = nxt
    return sorted(found, key=lambda v: (sum(v), v))


def build(stype: SystemType | str) -> RootSystem:
    if isinstance(stype, str):
        stype = SystemType.parse(stype)
    n = stype.rank
    gram = gram_matrix(stype)
    roots = _enumerate_positive(gram, n)
    index = {r: i for i, r in enumerate(roots)}
    heights = tuple(sum(r) for r in roots)

    maximal = [i for i, r in enumerate(roots) if all(all(a >= b for a, b in zip(r, s)) for s in roots)]
    if len(maximal) != 1:
        raise InvariantViolation(f"expected a unique highest root, found {len(maximal)}")

    simple = simple_embedding(stype)
    dim = len(simple[0])
    embedding = tuple(
        tuple(Fraction(sum(c * s[d] for c, s in zip(r, simple))) for d in range(dim)) for r in roots
    )

    gr = [[sum(gram[i][j] * r[j] for j in range(n)) for i in range(n)] for r in roots]
    pairing = tuple(tuple(sum(a * b for a, b in zip(ga, rb)) for rb in roots) for ga in gr)
    orth = tuple(sum(1 << j for j, p in enumerate(row) if p == 0) for row in pairing)

    refl, sign = [], []
    for a, ra in enumerate(roots):
        row, srow = [], []
        for b, rb in enumerate(roots):
            c = pairing[a][b]
            img, s = abs_root(tuple(y - c * x for x, y in zip(ra, rb)))
            row.append(index[img])
            srow.append(s)
        refl.append(tuple(row))
        sign.append(tuple(srow))

    packed = tuple(pack(r) for r in roots)
    return RootSystem(
        stype=stype,
        gram=gram,
        positive_roots=tuple(roots),
        heights=heights,
        highest=maximal[0],
        embedding=embedding,
        simple_ids=tuple(index[tuple(int(j == i) for j in range(n))] for i in range(n)),
        index=index,
        pairing=pairing,
        orth=orth,
        reflection=tuple(refl),
        reflection_sign=tuple(sign),
        packed=packed,
        packed_index={p: i for i, p in enumerate(packed)},
        embedding_index={e: i for i, e in enumerate(embedding)},
    )


@lru_cache(maxsize=None)
def system(name: str) -> RootSystem:
    """Cached build keyed by the type name, e.g. ``system("E8")``."""
    return build(SystemType.parse(name))


def bilinear(rs: RootSystem, a, b) -> int:
    return rs.bilinear(a, b)


def reflect(rs: RootSystem, mirror, target) -> Vector:
    return rs.reflect(mirror, target)


def act_word(rs: RootSystem, word, target) -> Vector:
    return rs.act_word(word, target)


def highest_root(rs: RootSystem) -> Vector:
    return rs.highest_root()
