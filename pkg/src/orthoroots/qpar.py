"""The quasiparabolic structure on positive n-roots: axioms, order,
extremal elements and the alignment-free subset."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

from .cliques import iter_bits
from .errors import InvariantViolation, UnsupportedTypeError
from .nroots import NRootSpace, d4_partition, matching_of, nroot_of_matching, space
from .report import Report
from .rootsys import RootSystem


@dataclass
class QPSet:
    X: NRootSpace
    covers: list[tuple[int, int]]
    up: list[list[int]]
    down: list[list[int]]
    theta_A: int
    theta_C: int
    theta_N: int
    _above: list[int] | None = field(default=None, repr=False)
    _below: list[int] | None = field(default=None, repr=False)

    @property
    def rs(self) -> RootSystem:
        return self.X.rs

    @property
    def level(self) -> list[int]:
        return self.X.level

    def _closure(self):
        n = len(self.X)
        order = sorted(range(n), key=lambda x: self.level[x])
        above = [0] * n
        for x in reversed(order):
            mask = 1 << x
            for y in self.up[x]:
                mask |= above[y]
            above[x] = mask
        below = [0] * n
        for x in order:
            mask = 1 << x
            for y in self.down[x]:
                mask |= below[y]
            below[x] = mask
        self._above, self._below = above, below

    def above(self, x: int) -> int:
        """Bitmask of all y with x <=_Q y."""
        if self._above is None:
            self._closure()
        return self._above[x]

    def below(self, x: int) -> int:
        if self._below is None:
            self._closure()
        return self._below[x]

    def leq(self, x: int, y: int) -> bool:
        return bool(self.above(x) >> y & 1)

    def interval(self, x: int, y: int) -> int:
        return self.above(x) & self.below(y)

    def hasse_edges(self) -> str:
        lines = ["# levels: " + " ".join(map(str, self.level))]
        lines += [f"{u} {v}" for u, v in self.covers]
        return "\n".join(lines) + "\n"


@dataclass
class XISet:
    members: list[int]
    even: list[int]
    odd: list[int]
    theta_C: int
    x_index: int


def _reflections(rs: RootSystem) -> range:
    return range(rs.num_positive)


def verify_scaled(rs: RootSystem) -> Report:
    X = space(rs)
    rep = Report("scaled")
    lam = X.level
    for i in range(1, rs.rank + 1):
        images, _ = X.simple_action(i)
        for x, y in enumerate(images):
            rep.expect(abs(lam[y] - lam[x]) <= 1, (i, x, y))
            if y != x and lam[y] == lam[x]:
                rep.fail(("simple move keeps level", i, x, y))
    return rep


def verify_qp1(rs: RootSystem) -> Report:
    X = space(rs)
    rep = Report("qp1")
    lam = X.level
    for r in _reflections(rs):
        images, _ = X.reflection_action(r)
        for x, y in enumerate(images):
            rep.expect(lam[y] != lam[x] or y == x, (r, x, y))
    return rep


def verify_qp2(rs: RootSystem) -> Report:
    X = space(rs)
    rep = Report("qp2")
    lam = X.level
    simple = [X.simple_action(i)[0] for i in range(1, rs.rank + 1)]
    vacuous = 0
    for r in _reflections(rs):
        images, _ = X.reflection_action(r)
        for x, rx in enumerate(images):
            if lam[rx] <= lam[x]:
                vacuous += len(simple)
                continue
            for i, s in enumerate(simple, 1):
                if lam[s[rx]] < lam[s[x]]:
                    rep.expect(rx == s[x], (r, i, x))
                else:
                    vacuous += 1
    rep.details["vacuous"] = vacuous
    return rep


def _unique(X: NRootSpace, label: str) -> int:
    M = X.rs.stype.quadruple_count
    found = [i for i, c in enumerate(X.counts) if getattr(c, label) == M]
    if len(found) != 1:
        raise InvariantViolation(f"expected one element of type {label}^{M}, found {len(found)}")
    return found[0]


def extremal(rs: RootSystem) -> tuple[int, int, int]:
    """IDs of the unique elements of types A^M, C^M and N^M."""
    X = space(rs)
    return _unique(X, "A"), _unique(X, "C"), _unique(X, "N")


@lru_cache(maxsize=None)
def build_order(rs: RootSystem) -> QPSet:
    X = space(rs)
    lam = X.level
    n = len(X)
    up = [set() for _ in range(n)]
    for r in _reflections(rs):
        images, _ = X.reflection_action(r)
        for x, y in enumerate(images):
            if lam[y] == lam[x] + 1:
                up[x].add(y)
    covers = sorted((x, y) for x in range(n) for y in up[x])
    down = [[] for _ in range(n)]
    for x, y in covers:
        down[y].append(x)
    a, c, nn = extremal(rs)
    return QPSet(X, covers, [sorted(s) for s in up], down, a, c, nn)


def level_change_laws(rs: RootSystem) -> Report:
    """Level changes of quadruple substitutions and of reflection moves."""
    X = space(rs)
    rep = Report("level_change_laws")
    lam = X.level
    law = {
        ("A", "C"): lambda d: d > 0 and d % 2 == 1,
        ("C", "N"): lambda d: d > 0 and d % 2 == 1,
        ("A", "N"): lambda d: d > 0 and d % 2 == 0,
    }
    tally = {}
    for x, quads in enumerate(X.quads):
        rest = set(X.elements[x])
        for q, _, lab in quads:
            base = rest.difference(q)
            for lab2, q2 in d4_partition(rs, q).items():
                if lab2 == lab:
                    continue
                y = X.index[tuple(sorted(base.union(q2)))]
                d = lam[y] - lam[x]
                key = (lab, lab2) if (lab, lab2) in law else (lab2, lab)
                ok = law[key](d if key == (lab, lab2) else -d)
                if {lab, lab2} == {"C", "N"}:
                    ok = ok and X.counts[x].A == X.counts[y].A
                rep.expect(ok, ("substitution", x, q, lab, lab2, d))
                tally[(lab, lab2)] = tally.get((lab, lab2), 0) + 1

    # Reflections move exactly one quadruple to another one of its D4 subsystem.
    moves = 0
    for r in _reflections(rs):
        images, _ = X.reflection_action(r)
        for x, y in enumerate(images):
            if x == y:
                continue
            moves += 1
            q = tuple(b for b in X.elements[x] if rs.pairing[r][b])
            q2 = tuple(sorted(set(X.elements[y]) - set(X.elements[x]).difference(q)))
            part = d4_partition(rs, q)
            rep.expect(len(q) == 4 and q2 in part.values() and q2 != q, ("reflection", r, x, y))
    for i in range(1, rs.rank + 1):
        images, _ = X.simple_action(i)
        for x, y in enumerate(images):
            if lam[y] > lam[x]:
                a, c, n = X.counts[x].astuple()
                a2, c2, n2 = X.counts[y].astuple()
                ok = lam[y] == lam[x] + 1 and (
                    (a2, c2, n2) == (a - 1, c + 1, n) or (a2, c2, n2) == (a, c - 1, n + 1)
                )
                rep.expect(ok, ("simple", i, x, y))
    rep.details["substitutions"] = {f"{a}->{b}": v for (a, b), v in sorted(tally.items())}
    rep.details["reflection_moves"] = moves
    return rep


def alignment_free(rs: RootSystem) -> XISet:
    X = space(rs)
    P = build_order(rs)
    members = [x for x, c in enumerate(X.counts) if c.A == 0]
    target = X.sigma(P.theta_N)
    fiber = [x for x in range(len(X)) if X.sigma(x) == target]
    if members != fiber:
        raise InvariantViolation("alignment-free elements differ from the sigma fiber of theta_N")
    mask = sum(1 << x for x in members)
    if P.above(P.theta_C) & mask != mask or P.theta_C not in members:
        raise InvariantViolation("theta_C is not the minimum of the alignment-free set")
    simple_in_thetaN = [rs.simple_index_of(b) for b in X.elements[P.theta_N] if rs.simple_index_of(b)]
    if len(simple_in_thetaN) != 1:
        raise InvariantViolation(f"theta_N has {len(simple_in_thetaN)} simple components")
    return XISet(
        members=members,
        even=[x for x in members if X.level[x] % 2 == 0],
        odd=[x for x in members if X.level[x] % 2 == 1],
        theta_C=P.theta_C,
        x_index=simple_in_thetaN[0],
    )


def xi_parity_report(rs: RootSystem) -> Report:
    """Simple reflections of W_I swap the parity classes of X_I, and every
    reflection of W_I changes level parity on X_I."""
    X = space(rs)
    XI = alignment_free(rs)
    rep = Report("xi_parity")
    inside = set(XI.members)
    lam = X.level
    rep.expect(len(XI.even) == len(XI.odd), ("sizes", len(XI.even), len(XI.odd)))
    xi = XI.x_index - 1
    for r, root in enumerate(rs.positive_roots):
        if root[xi]:
            continue
        images, _ = X.reflection_action(r)
        for x in XI.members:
            y = images[x]
            rep.expect(y in inside and (lam[y] - lam[x]) % 2 == 1, (r, x, y))
    return rep


def _inversions(perm) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])


def bruhat_iso_typeD(rs: RootSystem) -> Report:
    """Compare X_I with the Bruhat order on S_k through
    tau -> prod_i (e_i^2 - e_{tau(i)+k}^2)."""
    if not rs.stype.is_type_d:
        raise UnsupportedTypeError("the Bruhat comparison only applies in type D")
    k = rs.stype.k
    M = rs.stype.quadruple_count
    X = space(rs)
    P = build_order(rs)
    XI = alignment_free(rs)
    rep = Report("bruhat_iso")
    perms = list(permutations(range(k)))
    pos = {p: i for i, p in enumerate(perms)}
    phi = [X.index[nroot_of_matching(rs, [(i + 1, p[i] + 1 + k) for i in range(k)])] for p in perms]
    rep.expect(sorted(phi) == XI.members, "phi is not a bijection onto X_I")
    for p, x in zip(perms, phi):
        rep.expect(X.level[x] == M + _inversions(p), ("level", p, X.level[x]))

    length = [_inversions(p) for p in perms]
    up = [[] for _ in perms]
    for i, p in enumerate(perms):
        for a in range(k):
            for b in range(a + 1, k):
                q = list(p)
                q[a], q[b] = q[b], q[a]
                j = pos[tuple(q)]
                if length[j] == length[i] + 1:
                    up[i].append(j)
    above = [0] * len(perms)
    for i in sorted(range(len(perms)), key=lambda i: -length[i]):
        mask = 1 << i
        for j in up[i]:
            mask |= above[j]
        above[i] = mask
    for i in range(len(perms)):
        for j in range(len(perms)):
            rep.expect(bool(above[i] >> j & 1) == P.leq(phi[i], phi[j]), ("order", perms[i], perms[j]))
    rep.details["theta_C"] = phi[pos[tuple(range(k))]] == P.theta_C
    rep.details["theta_N"] = phi[pos[tuple(reversed(range(k)))]] == P.theta_N
    rep.expect(rep.details["theta_C"] and rep.details["theta_N"], "extremes")
    return rep


def phi_action_report(rs: RootSystem) -> Report:
    """Every reflection acts on matchings through the transposition of the
    two coordinates in its support."""
    if not rs.stype.is_type_d:
        raise UnsupportedTypeError("matchings only exist in type D")
    X = space(rs)
    rep = Report("phi_action")
    for r in _reflections(rs):
        i, j = (d + 1 for d, c in enumerate(rs.embedding[r]) if c)
        swap = {i: j, j: i}
        images, _ = X.reflection_action(r)
        for x, y in enumerate(images):
            m = matching_of(rs, X.elements[x])
            moved = tuple(sorted(tuple(sorted(swap.get(a, a) for a in pair)) for pair in m))
            rep.expect(moved == matching_of(rs, X.elements[y]), (r, x, y))
    return rep


def abstract_characterizations(rs: RootSystem) -> Report:
    X = space(rs)
    P = build_order(rs)
    lam = X.level
    n = len(X)
    rep = Report("abstract_characterizations")
    raise_even = [False] * n
    lower_even = [False] * n
    step2_pred = [[] for _ in range(n)]
    for r in _reflections(rs):
        images, _ = X.reflection_action(r)
        for x, y in enumerate(images):
            d = lam[y] - lam[x]
            if d > 0 and d % 2 == 0:
                raise_even[x] = True
            if d < 0 and d % 2 == 0:
                lower_even[x] = True
            if d == 2:
                step2_pred[y].append(x)
    reach = {P.theta_N}
    queue = deque([P.theta_N])
    while queue:
        y = queue.popleft()
        for x in step2_pred[y]:
            if x not in reach:
                reach.add(x)
                queue.append(x)
    for x, c in enumerate(X.counts):
        rep.expect((c.A == 0) == (not raise_even[x]), ("alignment-free", x))
        rep.expect((c.N == 0) == (not lower_even[x]), ("nonnesting", x))
        rep.expect((c.C == 0) == (x in reach), ("noncrossing", x))
    return rep


def covers_report(rs: RootSystem) -> Report:
    P = build_order(rs)
    rep = Report("order")
    lam = P.level
    for x, y in P.covers:
        rep.expect(lam[y] == lam[x] + 1, (x, y))
    minimal = [x for x in range(len(P.X)) if not P.down[x]]
    maximal = [x for x in range(len(P.X)) if not P.up[x]]
    rep.expect(minimal == [P.theta_A], ("minimal", minimal))
    rep.expect(maximal == [P.theta_N], ("maximal", maximal))
    full = (1 << len(P.X)) - 1
    rep.expect(P.above(P.theta_A) == full, "theta_A is not below everything")
    rep.details["covers"] = len(P.covers)
    return rep


def members_of(mask: int) -> list[int]:
    return list(iter_bits(mask))
