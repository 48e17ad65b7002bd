"""Backtracking clique search over adjacency rows stored as Python ints."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
import multiprocessing


def _above(v: int) -> int:
    return ~((1 << (v + 1)) - 1)


def _extend(adj: Sequence[int], size: int, clique: list[int], cand: int, out: list):
    if len(clique) == size:
        out.append(tuple(clique))
        return
    need = size - len(clique)
    while cand:
        if cand.bit_count() < need:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        clique.append(v)
        _extend(adj, size, clique, cand & adj[v], out)
        clique.pop()


def cliques_from(adj: Sequence[int], size: int, first: int, allowed: int = -1) -> list[tuple[int, ...]]:
    """All cliques of the given size whose smallest vertex is ``first``."""
    out: list[tuple[int, ...]] = []
    _extend(adj, size, [first], adj[first] & _above(first) & allowed, out)
    return out


def _task(args):
    adj, size, first, allowed = args
    return cliques_from(adj, size, first, allowed)


def cliques_of_size(adj: Sequence[int], size: int, allowed: int | None = None, workers: int = 1) -> list[tuple[int, ...]]:
    """Every clique with ``size`` vertices, as sorted tuples in lexicographic order.

    ``adj[v]`` has bit ``u`` set when u and v are adjacent.  With more than one
    worker the search is split over the smallest vertex; the output order does
    not depend on the split.
    """
    n = len(adj)
    mask = (1 << n) - 1 if allowed is None else allowed
    firsts = [v for v in range(n) if mask >> v & 1]
    if workers > 1 and len(firsts) > 1:
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            parts = list(pool.map(_task, [(tuple(adj), size, v, mask) for v in firsts]))
    else:
        parts = [cliques_from(adj, size, v, mask) for v in firsts]
    return [c for part in parts for c in part]


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low
