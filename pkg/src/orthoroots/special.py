"""Component sums, sigma classes, the nonnesting element w_N and its heap,
Poincare polynomials, Coxeter orbits and cyclic sieving."""

from __future__ import annotations

import cmath
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

from .cliques import iter_bits
from .errors import InvariantViolation, UsageError
from .macdonald import bases, dominates
from .nroots import space
from .qpar import alignment_free, build_order
from .report import Report
from .rootsys import RootSystem, SystemType, Vector, dynkin_edges

# sigma is re-exported for callers that think of it as a class statistic

# ---------------------------------------------------------------- polynomials
# Polynomials in q are lists of integer coefficients, index = exponent.


def trim(p: list[int]) -> list[int]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def qint(d: int) -> list[int]:
    """[d]_q = 1 + q + ... + q^{d-1}."""
    return [1] * d


def shift(p: list[int], s: int) -> list[int]:
    return [0] * s + list(p)


def pdivmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic polynomial with integer coefficients."""
    num = trim(num)
    den = trim(den)
    if den[-1] != 1:
        raise UsageError("divisor must be monic")
    if len(num) < len(den):
        return [0], num
    rem = list(num)
    quo = [0] * (len(num) - len(den) + 1)
    for i in range(len(quo) - 1, -1, -1):
        c = rem[i + len(den) - 1]
        quo[i] = c
        if c:
            for j, d in enumerate(den):
                rem[i + j] -= c * d
    return trim(quo), trim(rem[: len(den) - 1] or [0])


def qint_product(ds, s: int = 0) -> list[int]:
    out = [1]
    for d in ds:
        out = pmul(out, qint(d))
    return shift(out, s)


def factor_shifted_qints(p: list[int]) -> list[int] | None:
    """Find D with p = prod_{d in D} q^{d-1} [d]_q by greedy division, or None."""
    p = trim(p)
    low = next(i for i, c in enumerate(p) if c)
    rest = p[low:]
    found = []
    while len(rest) > 1:
        for d in range(len(rest), 1, -1):
            quo, rem = pdivmod(rest, qint(d))
            if rem == [0]:
                found.append(d)
                rest = quo
                break
        else:
            return None
    if rest != [1] or low != sum(d - 1 for d in found):
        return None
    return sorted(found)


def peval(p: list[int], z: complex) -> complex:
    out = 0j
    for c in reversed(p):
        out = out * z + c
    return out


def level_polynomial(levels) -> list[int]:
    levels = list(levels)
    out = [0] * (max(levels) + 1)
    for v in levels:
        out[v] += 1
    return out


def closed_form_X(stype: SystemType) -> list[int]:
    if stype.is_type_d:
        return qint_product([2 * i - 1 for i in range(2, stype.k + 1)])
    return qint_product([3, 5, 9] if stype.family == "E7" else [3, 5, 9, 15])


def closed_form_XI(stype: SystemType) -> list[int]:
    M = stype.quadruple_count
    if stype.is_type_d:
        return qint_product(range(2, stype.k + 1), M)
    return qint_product([2, 3, 5] if stype.family == "E7" else [2, 3, 5, 8], M)


def format_poly(p: list[int]) -> str:
    terms = []
    for i, c in enumerate(p):
        if c:
            mon = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            terms.append(f"{c}{mon}" if mon and c != 1 else (mon or str(c)))
    return " + ".join(terms) or "0"


# -------------------------------------------------------------- sigma classes


@dataclass
class SigmaClass:
    sigma: Vector
    members: list[int]
    min_nonnesting: int
    max_noncrossing: int


@lru_cache(maxsize=None)
def sigma_classes(rs: RootSystem) -> tuple[SigmaClass, ...]:
    X = space(rs)
    groups: dict[Vector, list[int]] = {}
    for x in range(len(X)):
        groups.setdefault(X.sigma(x), []).append(x)
    out = []
    for s in sorted(groups, key=lambda v: (sum(v), v)):
        members = groups[s]
        nn = [x for x in members if X.counts[x].N == 0]
        nc = [x for x in members if X.counts[x].C == 0]
        if len(nn) != 1 or len(nc) != 1:
            raise InvariantViolation(f"sigma class {s} has {len(nn)} nonnesting, {len(nc)} noncrossing")
        out.append(SigmaClass(s, members, nn[0], nc[0]))
    return tuple(out)


def sigma_class_report(rs: RootSystem) -> Report:
    space(rs)
    P = build_order(rs)
    nc, _ = bases(rs)
    classes = sigma_classes(rs)
    rep = Report("sigma_classes")
    rep.expect(len(classes) == len(nc), ("count", len(classes), len(nc)))
    for c in classes:
        mask = sum(1 << x for x in c.members)
        rep.expect(P.interval(c.min_nonnesting, c.max_noncrossing) == mask, ("interval", c.sigma))
    XI = alignment_free(rs)
    top = [c for c in classes if all(dominates(c.sigma, o.sigma) for o in classes)]
    rep.expect(len(top) == 1 and top[0].members == XI.members, "alignment-free class is not the maximum")
    rep.expect(
        top and top[0].min_nonnesting == P.theta_C and top[0].max_noncrossing == P.theta_N,
        "top class is not [theta_C, theta_N]",
    )
    maximal = [c for c in classes if not any(o is not c and dominates(o.sigma, c.sigma) for o in classes)]
    rep.expect(len(maximal) == 1, ("maximal classes", len(maximal)))
    rep.details["sizes"] = sorted(len(c.members) for c in classes)
    rep.details["top_size"] = len(XI.members)
    return rep


def class_poincare(rs: RootSystem) -> list[tuple[SigmaClass, list[int], list[int] | None]]:
    """Level generating polynomial of each class with its factorization."""
    X = space(rs)
    return [
        (c, p, factor_shifted_qints(p))
        for c in sigma_classes(rs)
        for p in [level_polynomial(X.level[x] for x in c.members)]
    ]


def poincare_report(rs: RootSystem) -> Report:
    X = space(rs)
    XI = alignment_free(rs)
    rep = Report("poincare")
    ps_x = level_polynomial(X.level)
    ps_xi = level_polynomial(X.level[x] for x in XI.members)
    rep.expect(ps_x == closed_form_X(rs.stype), ("PS_X", ps_x))
    rep.expect(ps_xi == closed_form_XI(rs.stype), ("PS_XI", ps_xi))
    factored = 0
    for c, p, dec in class_poincare(rs):
        if rep.expect(dec is not None and qint_product(dec, sum(d - 1 for d in dec)) == p, ("class", c.sigma, p)):
            factored += 1
    rep.details["PS_X"] = format_poly(ps_x)
    rep.details["PS_XI"] = format_poly(ps_xi)
    rep.details["factored_classes"] = factored
    return rep


# ------------------------------------------------------- Eulerian intervals


def _eulerian(P, lo: int, hi: int, even: int, odd: int) -> bool:
    """Every subinterval [a, b] with a < b has as many even- as odd-level
    elements; equivalent to mu(a, b) = (-1)^(level(b) - level(a))."""
    inside = P.interval(lo, hi)
    lam = P.level
    members = list(iter_bits(inside))
    # Length-2 subintervals must be diamonds; this is cheap and catches
    # almost every non-Eulerian interval.
    for a in members:
        paths = Counter(b for c in P.up[a] if inside >> c & 1 for b in P.up[c] if inside >> b & 1)
        if any(v != 2 for v in paths.values()):
            return False
    for a in members:
        for b in iter_bits(P.above(a) & inside):
            if lam[b] - lam[a] > 2:
                m = P.above(a) & P.below(b)
                if (m & even).bit_count() != (m & odd).bit_count():
                    return False
    return True


def mobius(P, a: int, b: int) -> int:
    """Mobius function of the quasiparabolic order, by the defining recursion."""
    inside = P.interval(a, b)
    if not inside:
        return 0
    lam = P.level
    mu = {}
    for c in sorted(iter_bits(inside), key=lambda x: lam[x]):
        mu[c] = 1 if c == a else -sum(mu[z] for z in iter_bits(P.below(c) & inside) if z != c)
    return mu[b]


def mobius_eulerian_check(rs: RootSystem) -> Report:
    X = space(rs)
    P = build_order(rs)
    nc, nn = bases(rs)
    even = sum(1 << x for x in range(len(X)) if X.level[x] % 2 == 0)
    odd = ((1 << len(X)) - 1) ^ even
    classes = {(c.min_nonnesting, c.max_noncrossing) for c in sigma_classes(rs)}
    rep = Report("eulerian_intervals")
    comparable = 0
    for x in nn:
        for y in nc:
            if not P.leq(x, y):
                continue
            comparable += 1
            rep.expect(_eulerian(P, x, y, even, odd) == ((x, y) in classes), (x, y))
    rep.details["comparable_pairs"] = comparable
    return rep


def congruence_check(rs: RootSystem) -> Report:
    """Projections to class minimum and class maximum preserve the order."""
    X = space(rs)
    P = build_order(rs)
    down, up = [0] * len(X), [0] * len(X)
    for c in sigma_classes(rs):
        for x in c.members:
            down[x], up[x] = c.min_nonnesting, c.max_noncrossing
    rep = Report("poset_congruence")
    for x, y in P.covers:
        rep.expect(P.leq(down[x], down[y]), ("down", x, y))
        rep.expect(P.leq(up[x], up[y]), ("up", x, y))
    for c in sigma_classes(rs):
        rep.expect(down[c.min_nonnesting] == c.min_nonnesting and up[c.max_noncrossing] == c.max_noncrossing, c.sigma)
    return rep


# ------------------------------------------------------- the element w_N


def _adjacent(stype: SystemType) -> set[tuple[int, int]]:
    edges = set()
    for a, b in dynkin_edges(stype):
        edges.add((a, b))
        edges.add((b, a))
    return edges


def commutation_class(word, stype: SystemType, limit: int = 200_000) -> set[tuple[int, ...]]:
    adj = _adjacent(stype)
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if a != b and (a, b) not in adj:
                v = w[:i] + (b, a) + w[i + 2 :]
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
                    if len(seen) > limit:
                        raise UsageError("commutation class too large")
    return seen


def commutation_equivalent(w1, w2, stype: SystemType) -> bool:
    """Two words are related by commutations iff their restrictions to every
    pair of equal or adjacent letters agree."""
    if Counter(w1) != Counter(w2):
        return False
    adj = _adjacent(stype)
    letters = sorted(set(w1))
    for a in letters:
        for b in letters:
            if a <= b and (a == b or (a, b) in adj):
                if [c for c in w1 if c in (a, b)] != [c for c in w2 if c in (a, b)]:
                    return False
    return True


def is_fully_commutative(word, stype: SystemType) -> bool:
    """No word in the commutation class contains s_i s_i or s_i s_j s_i with
    i, j adjacent."""
    adj = _adjacent(stype)
    for w in commutation_class(word, stype):
        for i in range(len(w) - 1):
            if w[i] == w[i + 1]:
                return False
            if i + 2 < len(w) and w[i] == w[i + 2] and (w[i], w[i + 1]) in adj:
                return False
    return True


@dataclass
class NonnestingElement:
    word: list[int]
    chain: list[int]
    length: int


def nonnesting_element(rs: RootSystem, choose=None) -> NonnestingElement:
    """Build w_N greedily along a nonnesting sequence from theta_A to theta_C.

    ``choose`` picks among the admissible simple indices (default: smallest).
    The returned word s_{i_1} ... s_{i_r} satisfies w(theta_C) = theta_A.
    """
    X = space(rs)
    P = build_order(rs)
    cur, word, chain = P.theta_A, [], [P.theta_A]
    while cur != P.theta_C:
        s = X.sigma(cur)
        options = [i for i in range(1, rs.rank + 1) if rs.bilinear(s, rs.simple_root(i)) < 0]
        if not options:
            raise InvariantViolation(f"no admissible simple root at element {cur}")
        i = options[0] if choose is None else choose(options)
        _, nxt = X.act_id([i], cur)
        expected = tuple(v + 2 * (j == i - 1) for j, v in enumerate(s))
        if X.sigma(nxt) != expected or X.level[nxt] != X.level[cur] + 1 or X.counts[nxt].N:
            raise InvariantViolation(f"step s_{i} from {cur} is not a nonnesting move")
        word.append(i)
        chain.append(nxt)
        cur = nxt
        if len(word) > rs.stype.quadruple_count:
            raise InvariantViolation("nonnesting sequence is longer than M")
    return NonnestingElement(word, chain, len(word))


def nonnesting_report(rs: RootSystem, reference=None) -> Report:
    X = space(rs)
    P = build_order(rs)
    rep = Report("nonnesting_element")
    w = nonnesting_element(rs)
    M = rs.stype.quadruple_count
    rep.expect(w.length == M, ("length", w.length))
    rep.expect(X.act_id(w.word, P.theta_C)[1] == P.theta_A, "w(theta_C) != theta_A")
    rep.expect(
        rs.act_word(w.word, X.sigma(P.theta_C)) == X.sigma(P.theta_A), "w(sigma(theta_C)) != sigma(theta_A)"
    )
    rep.expect(is_fully_commutative(w.word, rs.stype), "not fully commutative")
    rep.expect(sum(X.sigma(P.theta_C)) - sum(X.sigma(P.theta_A)) == 2 * M, "height difference")
    rng = random.Random(0)
    for _ in range(20):
        other = nonnesting_element(rs, choose=rng.choice)
        rep.expect(commutation_equivalent(other.word, w.word, rs.stype), ("order-insensitive", other.word))
    if reference is not None:
        rep.expect(commutation_equivalent(reference, w.word, rs.stype), ("reference", reference, w.word))
    rep.details["word"] = w.word
    return rep


@dataclass
class HeapLattice:
    word: list[int]
    below: list[int]
    filters: list[int]
    images: list[int] = field(default_factory=list)


def heap_of(word, stype: SystemType) -> list[int]:
    """below[q]: bitmask of the positions p < q forced to precede q."""
    adj = _adjacent(stype)
    below = []
    for q, b in enumerate(word):
        mask = 0
        for p in range(q):
            if word[p] == b or (word[p], b) in adj:
                mask |= (1 << p) | below[p]
        below.append(mask)
    return below


def order_filters(below: list[int]) -> list[int]:
    """Up-closed subsets of the heap, as bitmasks."""
    n = len(below)
    above = [sum(1 << q for q in range(n) if below[q] >> p & 1) for p in range(n)]
    out = []

    def grow(pos: int, chosen: int):
        if pos < 0:
            out.append(chosen)
            return
        # positions are decided from last to first, so everything above pos is known
        grow(pos - 1, chosen)
        if above[pos] & chosen == above[pos]:
            grow(pos - 1, chosen | (1 << pos))

    grow(n - 1, 0)
    return sorted(out, key=lambda m: (m.bit_count(), m))


def weak_interval_lattice(rs: RootSystem) -> HeapLattice:
    X = space(rs)
    P = build_order(rs)
    w = nonnesting_element(rs)
    below = heap_of(w.word, rs.stype)
    filters = order_filters(below)
    fset = set(filters)
    for a in filters:
        for b in filters:
            if a | b not in fset or a & b not in fset:
                raise InvariantViolation("order filters are not closed under union and intersection")
    images = []
    for f in filters:
        sub = [w.word[p] for p in range(len(w.word)) if f >> p & 1]
        images.append(X.act_id(sub, P.theta_C)[1])
    _, nn = bases(rs)
    if sorted(images) != sorted(nn) or len(set(images)) != len(images):
        raise InvariantViolation("filter images are not exactly the nonnesting elements")
    return HeapLattice(w.word, below, filters, images)


# -------------------------------------------------- Coxeter orbits, sieving


def coxeter_word(rs: RootSystem) -> list[int]:
    return list(range(1, rs.rank + 1))


def _check_coxeter(rs: RootSystem, word):
    if sorted(word) != list(range(1, rs.rank + 1)):
        raise UsageError(f"{word} is not a Coxeter word")


def coxeter_permutation(rs: RootSystem, word) -> list[int]:
    X = space(rs)
    _check_coxeter(rs, word)
    return [X.act_id(word, x)[1] for x in range(len(X))]


@dataclass
class OrbitReport:
    seed: int
    orbit: list[int]
    covering: bool


def coxeter_orbit(rs: RootSystem, word, seed) -> OrbitReport:
    X = space(rs)
    perm = coxeter_permutation(rs, word)
    start = seed if isinstance(seed, int) else X.index[tuple(sorted(seed))]
    orbit = [start]
    while perm[orbit[-1]] != start:
        orbit.append(perm[orbit[-1]])
    tally = Counter(b for x in orbit for b in X.elements[x])
    covering = len(tally) == rs.num_positive and set(tally.values()) == {1}
    return OrbitReport(start, orbit, covering)


def find_covering_orbit(rs: RootSystem, word=None) -> OrbitReport | None:
    """First seed, in canonical order, whose orbit covers every positive root once."""
    word = coxeter_word(rs) if word is None else word
    X = space(rs)
    for x in range(len(X)):
        rep = coxeter_orbit(rs, word, x)
        if rep.covering:
            return rep
    return None


def find_covering_orbit_any(rs: RootSystem, limit: int = 5040) -> tuple[list[int], OrbitReport] | None:
    """Search Coxeter words in lexicographic order, then seeds."""
    for n, word in enumerate(permutations(range(1, rs.rank + 1))):
        if n >= limit:
            break
        rep = find_covering_orbit(rs, list(word))
        if rep is not None:
            return list(word), rep
    return None


def cyclic_sieving(rs: RootSystem, word=None, tol: float = 1e-6) -> Report:
    word = coxeter_word(rs) if word is None else word
    perm = coxeter_permutation(rs, word)
    m = rs.stype.coxeter_number // 2
    ps = closed_form_X(rs.stype)
    rep = Report("cyclic_sieving")
    power = list(range(len(perm)))
    counts = []
    for d in range(m):
        fixed = sum(1 for x, y in enumerate(power) if x == y)
        value = abs(peval(ps, cmath.exp(2j * cmath.pi * d / m)))
        counts.append(fixed)
        rep.expect(abs(fixed - value) <= tol, (d, fixed, value))
        if d:
            rep.expect(fixed == 0, ("fixed points", d, fixed))
        power = [perm[y] for y in power]
    rep.expect(power == list(range(len(perm))), "c^(h/2) does not act trivially")
    rep.details["fixed_points"] = counts
    return rep
