"""Positive n-roots, the signed Weyl group action on them, and the
crossing/nesting/alignment labels of their coplanar quadruples."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .cliques import cliques_of_size
from .errors import InvariantViolation, UnsupportedTypeError, UsageError
from .rootsys import PACK_BITS, RootSystem, Vector, is_positive

NRoot = tuple[int, ...]
LABELS = ("A", "C", "N")


@dataclass(frozen=True)
class FeatureCounts:
    A: int
    C: int
    N: int

    @property
    def level(self) -> int:
        return self.C + 2 * self.N

    def astuple(self) -> tuple[int, int, int]:
        return (self.A, self.C, self.N)


@dataclass(frozen=True)
class Quadruple:
    members: tuple[int, int, int, int]
    half_sum: Vector
    label: str
    d4_partition: dict

    def __hash__(self):
        return hash(self.members)

    def __eq__(self, other):
        return isinstance(other, Quadruple) and self.members == other.members


def enumerate_nroots(rs: RootSystem, workers: int = 1) -> list[NRoot]:
    """All maximal orthogonal sets of positive roots, in lexicographic order."""
    found = cliques_of_size(rs.orth, rs.rank, workers=workers)
    full = (1 << rs.num_positive) - 1
    for x in found:
        common = full
        for b in x:
            common &= rs.orth[b]
        if common:
            raise InvariantViolation(f"orthogonal set {x} extends to a larger one")
    return found


def is_maximal_orthogonal(rs: RootSystem, x) -> bool:
    x = tuple(x)
    if any(rs.pairing[a][b] for a, b in combinations(x, 2)):
        return False
    common = (1 << rs.num_positive) - 1
    for b in x:
        common &= rs.orth[b]
    return common == 0


def _reflection_ids(rs: RootSystem, word) -> list[int]:
    out = []
    for i in word:
        if not 1 <= i <= rs.rank:
            raise UsageError(f"simple reflection index {i} outside 1..{rs.rank}")
        out.append(rs.simple_ids[i - 1])
    return out


def reflect_nroot(rs: RootSystem, root: int, x: NRoot) -> tuple[int, NRoot]:
    """Apply the reflection in positive root ``root``; returns (sign, |s(x)|)."""
    row, srow = rs.reflection[root], rs.reflection_sign[root]
    sign = 1
    for b in x:
        sign *= srow[b]
    return sign, tuple(sorted(row[b] for b in x))


def act_signed(rs: RootSystem, word, x: NRoot) -> tuple[int, NRoot]:
    """Action of s_{i_1}...s_{i_r} on the product of the components of x."""
    sign = 1
    for r in reversed(_reflection_ids(rs, word)):
        s, x = reflect_nroot(rs, r, x)
        sign *= s
    return sign, x


def act(rs: RootSystem, word, x: NRoot) -> NRoot:
    return act_signed(rs, word, tuple(x))[1]


def sigma(rs: RootSystem, x: NRoot) -> Vector:
    """Sum of the components of x in simple-root coordinates."""
    roots = rs.positive_roots
    return tuple(sum(roots[b][i] for b in x) for i in range(rs.rank))


_EVEN_MASK = {}


def _even_mask(rank: int) -> int:
    if rank not in _EVEN_MASK:
        _EVEN_MASK[rank] = sum(1 << (PACK_BITS * i) for i in range(rank))
    return _EVEN_MASK[rank]


def _quadruples_fast(rs: RootSystem, x: NRoot) -> list[tuple[tuple[int, ...], int]]:
    packed, lookup, mask = rs.packed, rs.packed_index, _even_mask(rs.rank)
    out = []
    for q in combinations(x, 4):
        s = packed[q[0]] + packed[q[1]] + packed[q[2]] + packed[q[3]]
        if s & mask == 0:
            g = lookup.get(s >> 1)
            if g is not None:
                out.append((q, g))
    return out


def classify_heights(heights) -> str:
    """Label a coplanar quadruple from the heights of its four members."""
    h1, h2, h3, h4 = sorted(heights)
    low = h1 + h2 + h3
    if low == h4 or h2 + h3 == h1 + h4:
        raise InvariantViolation(f"forbidden height equality for heights {(h1, h2, h3, h4)}")
    if low < h4:
        return "A"
    if h2 + h3 > h1 + h4:
        return "N"
    return "C"


def _members_of(q) -> tuple[int, ...]:
    return q.members if isinstance(q, Quadruple) else tuple(sorted(q))


def _check_coplanar(rs: RootSystem, members) -> Vector:
    roots = rs.positive_roots
    if len(set(members)) != 4 or any(rs.pairing[a][b] for a, b in combinations(members, 2)):
        raise UsageError(f"{members} is not a set of four orthogonal roots")
    total = [sum(roots[b][i] for b in members) for i in range(rs.rank)]
    if any(t % 2 for t in total) or tuple(t // 2 for t in total) not in rs.index:
        raise UsageError(f"{members} does not sum to twice a root")
    return tuple(t // 2 for t in total)


@lru_cache(maxsize=None)
def _psi_positive(rs: RootSystem, members: tuple[int, ...]) -> tuple[int, ...]:
    """The 12 positive roots of the D4 subsystem containing a coplanar quadruple."""
    _check_coplanar(rs, members)
    roots = rs.positive_roots
    vecs = [roots[b] for b in members]
    out = set(members)
    for signs in product((1, -1), repeat=4):
        total = [sum(s * v[i] for s, v in zip(signs, vecs)) for i in range(rs.rank)]
        half = tuple(t // 2 for t in total)
        if is_positive(half):
            if half not in rs.index:
                raise InvariantViolation(f"half sum {half} of {members} is not a root")
            out.add(rs.index[half])
    if len(out) != 12:
        raise InvariantViolation(f"D4 subsystem of {members} has {len(out)} positive roots")
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def d4_partition(rs: RootSystem, members: tuple[int, ...]) -> dict[str, tuple[int, ...]]:
    """Split the positive roots of the D4 subsystem into its three orthogonal
    quadruples, keyed by their labels."""
    members = tuple(sorted(members))
    psi = _psi_positive(rs, members)
    rest = [b for b in psi if b not in members]
    first = rest[0]
    q2 = tuple(sorted([first] + [b for b in rest[1:] if rs.pairing[first][b] == 0]))
    q3 = tuple(sorted(b for b in rest if b not in q2))
    parts = {}
    for q in (members, q2, q3):
        if len(q) != 4:
            raise InvariantViolation(f"D4 subsystem of {members} does not split into quadruples")
        parts[classify_heights([rs.heights[b] for b in q])] = q
    if sorted(parts) != sorted(LABELS):
        raise InvariantViolation(f"D4 subsystem of {members} has labels {sorted(parts)}")
    return parts


def classify_d4(rs: RootSystem, q) -> str:
    """Reference classification from the induced simple system of the D4 subsystem.

    Writing the induced simple roots as a1, a3, a4 around the branch node a2,
    the crossing is {a1+a2, a2+a3, a2+a4, a1+a2+a3+a4}, the nesting is
    {a2, a1+a2+a3, a1+a2+a4, a2+a3+a4} and the alignment is the rest.
    """
    members = _members_of(q)
    psi = _psi_positive(rs, members)
    roots = rs.positive_roots
    vecs = {b: roots[b] for b in psi}
    sums = {tuple(x + y for x, y in zip(vecs[a], vecs[b])) for a, b in combinations(psi, 2)}
    simple = [b for b in psi if vecs[b] not in sums]
    if len(simple) != 4:
        raise InvariantViolation(f"induced simple system of {members} has {len(simple)} roots")
    branch = [a for a in simple if all(rs.pairing[a][b] != 0 for b in simple if b != a)]
    if len(branch) != 1:
        raise InvariantViolation(f"no unique branch node in the D4 subsystem of {members}")
    a2 = branch[0]
    a1, a3, a4 = (b for b in simple if b != a2)

    def comb(*coeffs):
        parts = (a1, a2, a3, a4)
        return rs.index[tuple(sum(c * vecs[p][i] for c, p in zip(coeffs, parts)) for i in range(rs.rank))]

    crossing = {comb(1, 1, 0, 0), comb(0, 1, 1, 0), comb(0, 1, 0, 1), comb(1, 1, 1, 1)}
    nesting = {comb(0, 1, 0, 0), comb(1, 1, 1, 0), comb(1, 1, 0, 1), comb(0, 1, 1, 1)}
    alignment = {comb(1, 0, 0, 0), comb(0, 0, 1, 0), comb(0, 0, 0, 1), comb(1, 2, 1, 1)}
    s = set(members)
    for label, block in (("C", crossing), ("N", nesting), ("A", alignment)):
        if s == block:
            return label
    raise InvariantViolation(f"{members} is not one of the three quadruples of its D4 subsystem")


def make_quadruple(rs: RootSystem, members) -> Quadruple:
    members = tuple(sorted(members))
    gamma = _check_coplanar(rs, members)
    return Quadruple(
        members=members,
        half_sum=gamma,
        label=classify_heights([rs.heights[b] for b in members]),
        d4_partition=d4_partition(rs, members),
    )


def coplanar_quadruples(rs: RootSystem, x: NRoot) -> list[Quadruple]:
    return [make_quadruple(rs, q) for q, _ in _quadruples_fast(rs, tuple(x))]


def classify(rs: RootSystem, q) -> str:
    members = _members_of(q)
    return classify_heights([rs.heights[b] for b in members])


def feature_counts(rs: RootSystem, x: NRoot) -> FeatureCounts:
    heights = rs.heights
    tally = {"A": 0, "C": 0, "N": 0}
    for q, _ in _quadruples_fast(rs, tuple(x)):
        tally[classify_heights([heights[b] for b in q])] += 1
    return FeatureCounts(**tally)


def moved_quadruple(rs: RootSystem, alpha, x: NRoot) -> Quadruple | None:
    """The quadruple of x not orthogonal to the root alpha, or None when
    s_alpha only flips a sign of x."""
    a = alpha if isinstance(alpha, int) else rs.root_id(alpha)
    if a in x:
        return None
    moved = [b for b in x if rs.pairing[a][b] != 0]
    if not moved:
        return None
    if len(moved) != 4:
        raise InvariantViolation(f"root {a} meets {len(moved)} components of {x}")
    return make_quadruple(rs, moved)


def _require_d(rs: RootSystem):
    if not rs.stype.is_type_d:
        raise UnsupportedTypeError(f"matchings only exist in type D, not {rs.stype}")


def matching_of(rs: RootSystem, x: NRoot) -> tuple[tuple[int, int], ...]:
    """Perfect matching of [n] given by the collinear pairs e_i +- e_j of x."""
    _require_d(rs)
    pairs = []
    for b in x:
        support = [i + 1 for i, c in enumerate(rs.embedding[b]) if c]
        pairs.append(tuple(support))
    blocks = sorted(set(pairs))
    if len(blocks) * 2 != len(pairs) or sorted(pairs) != sorted(blocks * 2):
        raise InvariantViolation(f"{x} is not a union of collinear pairs")
    return tuple(blocks)


def nroot_of_matching(rs: RootSystem, matching) -> NRoot:
    _require_d(rs)
    n = rs.rank
    blocks = [tuple(sorted(p)) for p in matching]
    if sorted(i for p in blocks for i in p) != list(range(1, n + 1)):
        raise UsageError(f"{matching} is not a perfect matching of 1..{n}")
    ids = []
    for i, j in blocks:
        for s in (1, -1):
            v = [0] * n
            v[i - 1], v[j - 1] = 1, -s
            ids.append(rs.from_embedding(v))
    return tuple(sorted(ids))


def format_matching(matching) -> str:
    return "{" + ",".join(f"{i}{j}" if max(i, j) < 10 else f"{i}-{j}" for i, j in matching) + "}"


class NRootSpace:
    """The set X of positive n-roots with labels, levels and action tables."""

    def __init__(self, rs: RootSystem, workers: int = 1):
        self.rs = rs
        self.elements: list[NRoot] = enumerate_nroots(rs, workers=workers)
        self.index = {x: i for i, x in enumerate(self.elements)}
        heights = rs.heights
        self.quads = []
        self.counts = []
        for x in self.elements:
            qs = _quadruples_fast(rs, x)
            labelled = tuple((q, g, classify_heights([heights[b] for b in q])) for q, g in qs)
            self.quads.append(labelled)
            tally = {"A": 0, "C": 0, "N": 0}
            for _, _, lab in labelled:
                tally[lab] += 1
            self.counts.append(FeatureCounts(**tally))
        self.level = [c.level for c in self.counts]
        self._action = {}

    def __len__(self):
        return len(self.elements)

    def id_of(self, x) -> int:
        return self.index[tuple(sorted(x))]

    def reflection_action(self, root: int) -> tuple[list[int], list[int]]:
        """Images and signs of every element under the reflection in ``root``."""
        if root not in self._action:
            images, signs = [], []
            for x in self.elements:
                s, y = reflect_nroot(self.rs, root, x)
                images.append(self.index[y])
                signs.append(s)
            self._action[root] = (images, signs)
        return self._action[root]

    def simple_action(self, i: int) -> tuple[list[int], list[int]]:
        return self.reflection_action(self.rs.simple_ids[i - 1])

    def act_id(self, word, xid: int) -> tuple[int, int]:
        """Signed action of a word on an element ID."""
        sign = 1
        for i in reversed(list(word)):
            images, signs = self.simple_action(i)
            sign *= signs[xid]
            xid = images[xid]
        return sign, xid

    def sigma(self, xid: int) -> Vector:
        return sigma(self.rs, self.elements[xid])

    def with_label(self, label: str) -> list[int]:
        """Elements with no quadruple of the given label."""
        return [i for i, c in enumerate(self.counts) if getattr(c, label) == 0]


@lru_cache(maxsize=None)
def space(rs: RootSystem) -> NRootSpace:
    return NRootSpace(rs)
