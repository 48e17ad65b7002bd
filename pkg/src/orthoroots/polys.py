"""Dense homogeneous polynomials with integer coefficients and exact rank."""

from __future__ import annotations

from functools import lru_cache
from math import gcd

import numpy as np


@lru_cache(maxsize=None)
def monomials(dim: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the given total degree, lexicographically descending."""
    if dim == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        out.extend((first,) + rest for rest in monomials(dim - 1, degree - first))
    return tuple(out)


@lru_cache(maxsize=None)
def _shift_maps(dim: int, degree: int) -> tuple[np.ndarray, ...]:
    """For each variable j, the index of m + e_j in degree+1 for every m of degree."""
    target = {m: i for i, m in enumerate(monomials(dim, degree + 1))}
    maps = []
    for j in range(dim):
        idx = []
        for m in monomials(dim, degree):
            bumped = list(m)
            bumped[j] += 1
            idx.append(target[tuple(bumped)])
        maps.append(np.array(idx, dtype=np.int64))
    return tuple(maps)


def linear_product(forms, dtype=np.int64) -> np.ndarray:
    """Coefficient vector of a product of linear forms, indexed by ``monomials``."""
    forms = [tuple(int(c) for c in f) for f in forms]
    dim = len(forms[0])
    poly = np.ones(1, dtype=dtype)
    for d, f in enumerate(forms):
        maps = _shift_maps(dim, d)
        nxt = np.zeros(len(monomials(dim, d + 1)), dtype=dtype)
        for j, c in enumerate(f):
            if c:
                nxt[maps[j]] += c * poly
        poly = nxt
    return poly


def as_dict(vec: np.ndarray, dim: int, degree: int) -> dict[tuple[int, ...], int]:
    mons = monomials(dim, degree)
    return {mons[i]: int(vec[i]) for i in np.flatnonzero(vec)}


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    return row


class Echelon:
    """Incremental row echelon form over the rationals, kept in primitive
    integer rows so that no fractions ever appear."""

    def __init__(self):
        self.rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        row = {k: int(v) for k, v in row.items() if v}
        while row:
            pivot = min(row)
            basis = self.rows.get(pivot)
            if basis is None:
                return row
            a, b = basis[pivot], row[pivot]
            out = {k: a * v for k, v in row.items()}
            for k, v in basis.items():
                nv = out.get(k, 0) - b * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
            row = _primitive(out)
        return row

    def add(self, row) -> bool:
        """Insert a row; returns True when it was independent of the earlier ones."""
        if isinstance(row, np.ndarray):
            row = {int(i): int(row[i]) for i in np.flatnonzero(row)}
        rest = self.reduce(row)
        if not rest:
            return False
        self.rows[min(rest)] = rest
        return True


def exact_rank(rows) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def rank_mod_p(matrix: np.ndarray, p: int = 2_147_483_629) -> int:
    """Rank over F_p, a lower bound for the rational rank."""
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(a[rank:, c])
        if not len(nz):
            continue
        r = rank + nz[0]
        a[[rank, r]] = a[[r, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        others = np.flatnonzero(a[:, c])
        for o in others:
            if o != rank:
                a[o] = (a[o] - int(a[o, c]) * a[rank]) % p
        rank += 1
    return rank
