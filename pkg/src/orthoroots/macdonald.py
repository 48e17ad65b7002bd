"""Linear combinations of positive n-roots and the Ptolemy rewriting system.

Crossings rewrite as nesting + alignment, nestings as crossing - alignment.
Both systems terminate, and their normal forms give the noncrossing and the
nonnesting bases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from . import polys
from .errors import InvariantViolation, UsageError
from .nroots import NRoot, NRootSpace, d4_partition, space
from .report import Report
from .rootsys import RootSystem


class MacElement:
    """A finite formal combination of positive n-roots, keyed by element ID."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[int, int | Fraction] = {}
        for k, v in (terms or {}).items():
            if v:
                self.terms[k] = self.terms.get(k, 0) + v
                if not self.terms[k]:
                    del self.terms[k]

    @classmethod
    def basis(cls, xid: int, coeff=1) -> "MacElement":
        return cls({xid: coeff})

    def add_term(self, xid: int, coeff) -> None:
        v = self.terms.get(xid, 0) + coeff
        if v:
            self.terms[xid] = v
        else:
            self.terms.pop(xid, None)

    def __add__(self, other: "MacElement") -> "MacElement":
        out = MacElement(self.terms)
        for k, v in other.terms.items():
            out.add_term(k, v)
        return out

    def __sub__(self, other: "MacElement") -> "MacElement":
        return self + other.scale(-1)

    def scale(self, c) -> "MacElement":
        return MacElement({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, MacElement) and self.terms == other.terms

    def __repr__(self):
        return f"MacElement({dict(sorted(self.terms.items()))})"

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def support(self) -> list[int]:
        return sorted(self.terms)


def _first_with_label(X: NRootSpace, xid: int, label: str):
    for q, _, lab in X.quads[xid]:
        if lab == label:
            return q
    return None


def _labelled(X: NRootSpace, xid: int, label: str) -> list[tuple[int, ...]]:
    return [q for q, _, lab in X.quads[xid] if lab == label]


_SUBSTITUTIONS: dict = {}


def _substitute(X: NRootSpace, xid: int, q, label: str) -> int:
    key = (id(X), xid, q, label)
    hit = _SUBSTITUTIONS.get(key)
    if hit is None:
        repl = d4_partition(X.rs, q)[label]
        comps = set(X.elements[xid]).difference(q).union(repl)
        hit = _SUBSTITUTIONS[key] = X.index[tuple(sorted(comps))]
    return hit


def _resolve_quadruple(X: NRootSpace, x, q) -> tuple[int, tuple[int, ...]]:
    xid = x if isinstance(x, int) else X.index[tuple(sorted(x))]
    members = tuple(sorted(q.members if hasattr(q, "members") else q))
    if not set(members) <= set(X.elements[xid]):
        raise UsageError(f"{members} is not a quadruple of element {xid}")
    return xid, members


def ptolemy_rewrite_C(rs: RootSystem, x, q) -> tuple[NRoot, NRoot]:
    """Replace a crossing q of x by its nesting and by its alignment."""
    X = space(rs)
    xid, members = _resolve_quadruple(X, x, q)
    part = d4_partition(rs, members)
    if part["C"] != members:
        raise UsageError(f"{members} is not a crossing")
    return X.elements[_substitute(X, xid, members, "N")], X.elements[_substitute(X, xid, members, "A")]


def ptolemy_rewrite_N(rs: RootSystem, x, q) -> tuple[NRoot, NRoot]:
    """Replace a nesting q of x by its crossing and by its alignment."""
    X = space(rs)
    xid, members = _resolve_quadruple(X, x, q)
    part = d4_partition(rs, members)
    if part["N"] != members:
        raise UsageError(f"{members} is not a nesting")
    return X.elements[_substitute(X, xid, members, "C")], X.elements[_substitute(X, xid, members, "A")]


# Ranks compatible with the crossing and nesting orders: every rewrite
# strictly lowers the rank of the terms it produces.
def _crossing_rank(X: NRootSpace, xid: int):
    return (sum(X.sigma(xid)), -X.level[xid], xid)


def _nesting_rank(X: NRootSpace, xid: int):
    return (sum(X.sigma(xid)), X.level[xid], xid)


@lru_cache(maxsize=None)
def _expansion_table(rs: RootSystem, kind: str) -> tuple[dict[int, int], ...]:
    X = space(rs)
    table: list[dict[int, int] | None] = [None] * len(X)
    if kind == "noncrossing":
        order = sorted(range(len(X)), key=lambda x: _crossing_rank(X, x))
        bad, first, second, sign = "C", "N", "A", 1
    else:
        order = sorted(range(len(X)), key=lambda x: _nesting_rank(X, x))
        bad, first, second, sign = "N", "C", "A", -1
    for x in order:
        q = _first_with_label(X, x, bad)
        if q is None:
            table[x] = {x: 1}
            continue
        a, b = table[_substitute(X, x, q, first)], table[_substitute(X, x, q, second)]
        if a is None or b is None:
            raise InvariantViolation(f"rewriting of element {x} does not descend")
        out = dict(a)
        for k, v in b.items():
            nv = out.get(k, 0) + sign * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        table[x] = out
    return tuple(table)


def _as_element(rs: RootSystem, e) -> MacElement:
    if isinstance(e, MacElement):
        return e
    if isinstance(e, int):
        return MacElement.basis(e)
    return MacElement.basis(space(rs).index[tuple(sorted(e))])


def _normalize(rs, e, kind, rng):
    e = _as_element(rs, e)
    if rng is None:
        table = _expansion_table(rs, kind)
        out = MacElement()
        for x, c in e.terms.items():
            for y, v in table[x].items():
                out.add_term(y, c * v)
        return out
    return _normalize_random(rs, e, kind, rng)


def _normalize_random(rs: RootSystem, e: MacElement, kind: str, rng: random.Random) -> MacElement:
    """Rewrite until no rule applies, choosing term and quadruple at random."""
    X = space(rs)
    bad, first, second, sign = ("C", "N", "A", 1) if kind == "noncrossing" else ("N", "C", "A", -1)
    terms = dict(e.terms)
    pool: list[int] = []
    where: dict[int, int] = {}

    def touch(x):
        live = x in terms
        if live and x not in where and getattr(X.counts[x], bad):
            where[x] = len(pool)
            pool.append(x)
        elif not live and x in where:
            i, last = where.pop(x), pool.pop()
            if last != x:
                pool[i] = last
                where[last] = i

    def add(x, c):
        v = terms.get(x, 0) + c
        if v:
            terms[x] = v
        else:
            terms.pop(x, None)
        touch(x)

    for x in sorted(terms):
        touch(x)
    while pool:
        x = pool[rng.randrange(len(pool))]
        q = rng.choice(_labelled(X, x, bad))
        c = terms.pop(x)
        touch(x)
        add(_substitute(X, x, q, first), c)
        add(_substitute(X, x, q, second), sign * c)
    return MacElement(terms)


def normalize_noncrossing(rs: RootSystem, e, rng: random.Random | None = None) -> MacElement:
    """Noncrossing normal form.  A random generator switches to a randomized
    reduction order; the result does not depend on it."""
    return _normalize(rs, e, "noncrossing", rng)


def normalize_nonnesting(rs: RootSystem, e, rng: random.Random | None = None) -> MacElement:
    return _normalize(rs, e, "nonnesting", rng)


def act_element(rs: RootSystem, word, e: MacElement) -> MacElement:
    """Linear extension of the signed action of a Weyl group word."""
    X = space(rs)
    out = MacElement()
    for x, c in e.terms.items():
        s, y = X.act_id(word, x)
        out.add_term(y, s * c)
    return out


@lru_cache(maxsize=None)
def bases(rs: RootSystem) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """IDs of the noncrossing and of the nonnesting elements."""
    X = space(rs)
    nc = tuple(x for x, c in enumerate(X.counts) if c.C == 0)
    nn = tuple(x for x, c in enumerate(X.counts) if c.N == 0)
    if len(nc) != len(nn):
        raise InvariantViolation(f"{len(nc)} noncrossing but {len(nn)} nonnesting elements")
    return nc, nn


def dominates(a, b) -> bool:
    """a >= b in the dominance order of the root lattice."""
    return all(x >= y for x, y in zip(a, b))


def sigma_order(rs: RootSystem) -> list[int]:
    """Noncrossing elements sorted by (height of sigma, canonical ID); a
    linear extension of the dominance order on sigma."""
    X = space(rs)
    nc, _ = bases(rs)
    return sorted(nc, key=lambda x: (sum(X.sigma(x)), x))


@dataclass
class ChangeOfBasis:
    ordering: list[int]
    nonnesting: list[int]
    matrix: list[list[int]]
    inverse: list[list[int]]

    def to_json_dict(self) -> dict:
        return {
            "ordering_noncrossing": self.ordering,
            "ordering_nonnesting": self.nonnesting,
            "nonnesting_in_noncrossing": self.matrix,
            "noncrossing_in_nonnesting": self.inverse,
        }


def change_of_basis(rs: RootSystem, ordering=None) -> ChangeOfBasis:
    """Matrix of the nonnesting basis in the noncrossing basis, rows and
    columns indexed by sigma classes in the given order."""
    X = space(rs)
    nc, nn = bases(rs)
    ordering = list(sigma_order(rs) if ordering is None else ordering)
    if sorted(ordering) != sorted(nc):
        raise UsageError("ordering must list every noncrossing element once")
    sig = [X.sigma(x) for x in ordering]
    for i in range(len(ordering)):
        for j in range(i + 1, len(ordering)):
            if sig[i] != sig[j] and dominates(sig[i], sig[j]):
                raise UsageError(f"ordering puts {ordering[i]} before the smaller {ordering[j]}")
    by_sigma = {X.sigma(x): x for x in nn}
    nn_ordered = [by_sigma[s] for s in sig]
    col_nc = {x: i for i, x in enumerate(ordering)}
    col_nn = {x: i for i, x in enumerate(nn_ordered)}
    d = len(ordering)
    mat = [[0] * d for _ in range(d)]
    inv = [[0] * d for _ in range(d)]
    for i, x in enumerate(nn_ordered):
        for y, c in normalize_noncrossing(rs, x).terms.items():
            mat[i][col_nc[y]] = c
    for i, x in enumerate(ordering):
        for y, c in normalize_nonnesting(rs, x).terms.items():
            inv[i][col_nn[y]] = c
    return ChangeOfBasis(ordering, nn_ordered, mat, inv)


def is_unitriangular(mat) -> bool:
    d = len(mat)
    return all(
        isinstance(mat[i][j], int) and (mat[i][j] == 1 if i == j else (j < i or mat[i][j] == 0))
        for i in range(d)
        for j in range(d)
    )


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def linear_forms(rs: RootSystem, x: NRoot) -> list[tuple[int, ...]]:
    """The components of x as integer linear forms in Euclidean coordinates."""
    forms = []
    for b in x:
        e = rs.embedding[b]
        if any(c.denominator != 1 for c in e):
            e = tuple(2 * c for c in e)
        forms.append(tuple(int(c) for c in e))
    return forms


def expand_dense(rs: RootSystem, x: NRoot) -> np.ndarray:
    return polys.linear_product(linear_forms(rs, x))


def expand_poly(rs: RootSystem, x: NRoot) -> dict[tuple[int, ...], int]:
    """Product of the components of x, as {exponent vector: coefficient}."""
    forms = linear_forms(rs, x)
    return polys.as_dict(polys.linear_product(forms), len(forms[0]), len(forms))


def oracle_report(rs: RootSystem, elements=None) -> Report:
    """Re-expand noncrossing normal forms as polynomials and compare exactly;
    also computes the exact rank of the expansions."""
    X = space(rs)
    nc, _ = bases(rs)
    rep = Report("polynomial_oracle")
    basis_poly = {y: expand_dense(rs, X.elements[y]) for y in nc}
    ech = polys.Echelon()
    for y in nc:
        ech.add(basis_poly[y])
    rep.details["basis_rank"] = ech.rank
    rep.expect(ech.rank == len(nc), ("basis rank", ech.rank, len(nc)))
    for x in range(len(X)) if elements is None else elements:
        lhs = expand_dense(rs, X.elements[x])
        rhs = np.zeros_like(lhs)
        for y, c in normalize_noncrossing(rs, x).terms.items():
            rhs += c * basis_poly[y]
        rep.expect(np.array_equal(lhs, rhs), ("mismatch", x))
    return rep


def expansion_rank(rs: RootSystem) -> int:
    """Exact rational rank of the polynomial expansions of all of X."""
    X = space(rs)
    return polys.exact_rank(expand_dense(rs, x) for x in X.elements)


def sign_coherence_check(rs: RootSystem) -> Report:
    X = space(rs)
    rep = Report("sign_coherence")
    for x in range(len(X)):
        for y, c in normalize_noncrossing(rs, x).terms.items():
            rep.expect(isinstance(c, int) and c > 0, (x, y, c))
    return rep


def simple_reflection_on_basis(rs: RootSystem, i: int, gamma) -> MacElement:
    """s_i applied to a noncrossing element, returned in the noncrossing basis."""
    X = space(rs)
    g = gamma if isinstance(gamma, int) else X.index[tuple(sorted(gamma))]
    if X.counts[g].C:
        raise UsageError(f"element {g} is not noncrossing")
    out = normalize_noncrossing(rs, act_element(rs, [i], MacElement.basis(g)))
    alpha = rs.simple_ids[i - 1]
    if alpha in X.elements[g]:
        if out != MacElement.basis(g, -1):
            raise InvariantViolation(f"s_{i} does not negate element {g}")
        return out
    rest = out - MacElement.basis(g)
    if len(rest) != 1:
        raise InvariantViolation(f"s_{i} applied to element {g} gives {out}")
    ((other, coeff),) = rest.terms.items()
    if coeff != 1 or alpha not in X.elements[other] or X.counts[other].C:
        raise InvariantViolation(f"s_{i} applied to element {g} gives {out}")
    return out


def maximal_in_B_order(rs: RootSystem) -> int:
    """The element whose noncrossing expansion dominates every other one."""
    X = space(rs)
    table = _expansion_table(rs, "noncrossing")
    tops = [
        x
        for x in range(len(X))
        if all(all(table[x].get(k, 0) >= v for k, v in table[y].items()) for y in range(len(X)))
    ]
    if len(tops) != 1:
        raise InvariantViolation(f"{len(tops)} maximal elements in the expansion order")
    return tops[0]


def euler_numbers(count: int) -> list[int]:
    """E_0, E_1, ... with sec(x) + tan(x) = sum E_i x^i / i!.

    y = sec + tan solves 2y' = 1 + y^2, which gives
    2 E_{m+1} = sum_j C(m, j) E_j E_{m-j} for m >= 1.
    """
    out = [1, 1][:count]
    while len(out) < count:
        m = len(out) - 1
        out.append(sum(comb(m, j) * out[j] * out[m - j] for j in range(m + 1)) // 2)
    return out


def odd_height_report(rs: RootSystem) -> Report:
    """Noncrossing components have odd height, and every odd-height positive
    root appears in a noncrossing element."""
    X = space(rs)
    nc, _ = bases(rs)
    rep = Report("odd_heights")
    used = set()
    for x in nc:
        for b in X.elements[x]:
            rep.expect(rs.heights[b] % 2 == 1, (x, b))
            used.add(b)
    for b, h in enumerate(rs.heights):
        if h % 2:
            rep.expect(b in used, ("unused", b))
    return rep


def random_element(rs: RootSystem, rng: random.Random, size: int = 4, bound: int = 3) -> MacElement:
    X = space(rs)
    e = MacElement()
    for _ in range(size):
        e.add_term(rng.randrange(len(X)), rng.choice([c for c in range(-bound, bound + 1) if c]))
    return e


def confluence_report(rs: RootSystem, seed: int = 0, elements: int = 100, strategies: int = 100) -> Report:
    rng = random.Random(seed)
    rep = Report("confluence")
    for _ in range(elements):
        e = random_element(rs, rng)
        nc = normalize_noncrossing(rs, e)
        nn = normalize_nonnesting(rs, e)
        for _ in range(strategies):
            sub = random.Random(rng.getrandbits(64))
            rep.expect(normalize_noncrossing(rs, e, rng=sub) == nc, ("noncrossing", e))
            rep.expect(normalize_nonnesting(rs, e, rng=sub) == nn, ("nonnesting", e))
    return rep
