"""Fano labellings in E7, Steiner quadruple systems, the Hadamard matrix and
the strongly regular graphs of E8."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .cliques import cliques_of_size, iter_bits
from .errors import InvariantViolation, UnsupportedTypeError
from .nroots import space
from .qpar import alignment_free, build_order
from .report import Report
from .rootsys import RootSystem


def _require(rs: RootSystem, family: str):
    if rs.stype.family != family:
        raise UnsupportedTypeError(f"this operation needs {family}, not {rs.stype}")


# ------------------------------------------------------------------- E7


@dataclass(frozen=True)
class FanoLabelling:
    triples: tuple[str, ...]

    def __post_init__(self):
        pairs = Counter(p for t in self.triples for p in combinations(t, 2))
        if len(self.triples) != 7 or len(pairs) != 21 or set(pairs.values()) != {1}:
            raise InvariantViolation(f"{self.triples} is not a Steiner triple system on 7 points")

    def sets(self) -> list[frozenset[int]]:
        return [frozenset(int(c) for c in t) for t in self.triples]


def fano_triple(rs: RootSystem, root: int) -> str:
    """abc for a root of the form (sum e_i) - 2(e_0 + e_a + e_b + e_c)."""
    e = rs.embedding[root]
    if any(abs(c) != 1 for c in e) or e[0] != -1:
        raise InvariantViolation(f"root {root} is not of Fano form")
    neg = [i for i in range(1, 8) if e[i] == -1]
    if len(neg) != 3:
        raise InvariantViolation(f"root {root} is not of Fano form")
    return "".join(map(str, neg))


@lru_cache(maxsize=None)
def fano_labellings(rs: RootSystem) -> dict[int, FanoLabelling]:
    _require(rs, "E7")
    X = space(rs)
    XI = alignment_free(rs)
    out = {x: FanoLabelling(tuple(sorted(fano_triple(rs, b) for b in X.elements[x]))) for x in XI.members}
    if len(set(out.values())) != len(out):
        raise InvariantViolation("two alignment-free elements share a labelling")
    return out


def all_fano_planes() -> set[tuple[str, ...]]:
    """Every Steiner triple system on {1..7}, by exhaustive search."""
    triples = ["".join(map(str, t)) for t in combinations(range(1, 8), 3)]
    out = set()

    def grow(chosen, covered, start):
        if len(chosen) == 7:
            out.add(tuple(sorted(chosen)))
            return
        for i in range(start, len(triples)):
            t = triples[i]
            ps = set(combinations(t, 2))
            if not ps & covered:
                grow(chosen + [t], covered | ps, i + 1)

    grow([], set(), 0)
    return out


def xor_closed(labelling: FanoLabelling) -> bool:
    return all(int(t[0]) ^ int(t[1]) ^ int(t[2]) == 0 for t in labelling.triples)


def labelling_pair_intersections(rs: RootSystem) -> Report:
    labels = fano_labellings(rs)
    XI = alignment_free(rs)
    rep = Report("fano_pair_intersections")
    for part in (XI.even, XI.odd):
        for x, y in combinations(part, 2):
            common = set(labels[x].triples) & set(labels[y].triples)
            rep.expect(len(common) == 1, (x, y, sorted(common)))
    cross = Counter(len(set(labels[x].triples) & set(labels[y].triples)) for x in XI.even for y in XI.odd)
    rep.details["cross_parity"] = dict(sorted(cross.items()))
    return rep


def level_from_labelling(labelling: FanoLabelling) -> int:
    """14 - d, d = number of 3-sets E such that no (E - {j}) + {i} with
    i <= j and j in E is a block."""
    blocks = set(labelling.sets())
    d = 0
    for E in combinations(range(1, 8), 3):
        E = frozenset(E)
        hit = any((E - {j}) | {i} in blocks for j in E for i in range(1, j + 1))
        if not hit:
            d += 1
    return 14 - d


def e7_level_formula(rs: RootSystem) -> Report:
    X = space(rs)
    rep = Report("e7_level_formula")
    for x, lab in fano_labellings(rs).items():
        rep.expect(level_from_labelling(lab) == X.level[x], (x, lab.triples, X.level[x]))
    return rep


def fano_report(rs: RootSystem) -> Report:
    """Bijection onto all 30 Fano planes, L_N xor-closed, equivariance under
    the coordinate transpositions s_1..s_6."""
    labels = fano_labellings(rs)
    P = build_order(rs)
    X = space(rs)
    rep = Report("fano_labellings")
    rep.expect(set(lab.triples for lab in labels.values()) == all_fano_planes(), "not all 30 Fano planes")
    xor = [x for x, lab in labels.items() if xor_closed(lab)]
    rep.expect(xor == [P.theta_N], ("xor-closed", xor))
    for i in range(1, 7):
        swap = {str(i): str(i + 1), str(i + 1): str(i)}
        for x, lab in labels.items():
            _, y = X.act_id([i], x)
            moved = tuple(sorted("".join(sorted(swap.get(c, c) for c in t)) for t in lab.triples))
            rep.expect(labels.get(y) is not None and labels[y].triples == moved, ("equivariance", i, x))
    rep.details["L_C"] = list(labels[P.theta_C].triples)
    rep.details["L_N"] = list(labels[P.theta_N].triples)
    return rep


# ------------------------------------------------------------------- E8


def quadruples_on_positions(rs: RootSystem, xid: int) -> list[frozenset[int]]:
    X = space(rs)
    pos = {b: i for i, b in enumerate(X.elements[xid])}
    return [frozenset(pos[b] for b in q) for q, _, _ in X.quads[xid]]


def steiner_quadruple_system(rs: RootSystem, x) -> Report:
    _require(rs, "E8")
    X = space(rs)
    xid = x if isinstance(x, int) else X.index[tuple(sorted(x))]
    quads = quadruples_on_positions(rs, xid)
    rep = Report("steiner_quadruples")
    rep.expect(len(quads) == 14, ("count", len(quads)))
    cover = Counter(t for q in quads for t in combinations(sorted(q), 3))
    rep.expect(len(cover) == 56 and set(cover.values()) == {1}, "3-subsets not covered exactly once")
    qs = set(quads)
    for q in quads:
        rep.expect(frozenset(range(8)) - q in qs, ("complement", sorted(q)))
    for a, b in combinations(quads, 2):
        rep.expect(len(a & b) in (0, 2), ("intersection", sorted(a), sorted(b)))
    return rep


def steiner_all(rs: RootSystem) -> Report:
    rep = Report("steiner_all")
    for x in range(len(space(rs))):
        rep.expect(steiner_quadruple_system(rs, x).passed, x)
    return rep


def sign_matrix(rs: RootSystem, xid: int) -> list[list[int]]:
    """Rows: Euclidean coordinates of the components of an element."""
    X = space(rs)
    return [[int(c) for c in rs.embedding[b]] for b in X.elements[xid]]


def determinant(mat) -> Fraction:
    a = [[Fraction(v) for v in row] for row in mat]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def hadamard_check(rs: RootSystem) -> Report:
    _require(rs, "E8")
    P = build_order(rs)
    H = sign_matrix(rs, P.theta_C)
    rep = Report("hadamard")
    rep.expect(all(abs(v) == 1 for row in H for v in row), "entries are not +-1")
    for i, j in combinations(range(8), 2):
        rep.expect(sum(a * b for a, b in zip(H[i], H[j])) == 0, ("rows", i, j))
    rep.expect(abs(determinant(H)) == 8**4, "determinant")
    blocks = []
    for row in H:
        if len(set(row)) == 2:
            blocks.append(frozenset(i for i, v in enumerate(row) if v > 0))
            blocks.append(frozenset(i for i, v in enumerate(row) if v < 0))
    cover = Counter(t for q in blocks for t in combinations(sorted(q), 3))
    rep.expect(len(blocks) == 14 and len(cover) == 56 and set(cover.values()) == {1}, "sign quadruples")
    rep.details["rows"] = ["".join("+" if v > 0 else "-" for v in row) for row in H]
    return rep


@dataclass
class Graph:
    adj: list[int]
    source: str
    labels: list = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.order) for v in iter_bits(self.adj[u]) if u < v]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def to_edge_list(self) -> str:
        lines = [f"# {self.source}: {self.order} vertices"]
        lines += [f"{u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        name = "".join(c for c in self.source if c.isalnum()) or "G"
        lines = [f"graph {name} {{"]
        lines += [f"  {v};" for v in range(self.order)]
        lines += [f"  {u} -- {v};" for u, v in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


def graph_from_pairs(n: int, pairs, source: str = "graph") -> Graph:
    adj = [0] * n
    for u, v in pairs:
        if u == v:
            raise InvariantViolation("loops are not allowed")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(adj, source)


@lru_cache(maxsize=None)
def build_gamma(rs: RootSystem) -> Graph:
    """Even-level alignment-free elements, adjacent when they share no component."""
    _require(rs, "E8")
    X = space(rs)
    XI = alignment_free(rs)
    verts = XI.even
    comps = [set(X.elements[x]) for x in verts]
    adj = [0] * len(verts)
    for i, j in combinations(range(len(verts)), 2):
        if not comps[i] & comps[j]:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return Graph(adj, "Gamma", labels=list(verts))


@lru_cache(maxsize=None)
def build_orthogonality_graph(rs: RootSystem) -> Graph:
    _require(rs, "E8")
    return Graph(list(rs.orth), "G_E8", labels=list(range(rs.num_positive)))


@dataclass
class SRGResult:
    params: tuple[int, int, int, int] | None
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.params is not None


def srg_certify(g: Graph) -> SRGResult:
    n = g.order
    degrees = {g.degree(v) for v in range(n)}
    if len(degrees) != 1:
        return SRGResult(None, ("degree", sorted(degrees)))
    k = degrees.pop()
    lam = mu = None
    for u in range(n):
        for v in range(u + 1, n):
            common = (g.adj[u] & g.adj[v]).bit_count()
            if g.adj[u] >> v & 1:
                if lam is None:
                    lam = common
                elif common != lam:
                    return SRGResult(None, ("adjacent", u, v, common, lam))
            else:
                if mu is None:
                    mu = common
                elif common != mu:
                    return SRGResult(None, ("nonadjacent", u, v, common, mu))
    if lam is None or mu is None:
        return SRGResult(None, ("no adjacent pair" if lam is None else "no nonadjacent pair",))
    return SRGResult((n, k, lam, mu))


@lru_cache(maxsize=None)
def _cliques(g_key: tuple, size: int, workers: int = 1) -> tuple:
    return tuple(cliques_of_size(list(g_key), size, workers=workers))


def maximum_cliques(g: Graph, size: int = 8, workers: int = 1) -> tuple:
    return _cliques(tuple(g.adj), size, workers)


def _edges_through(g: Graph, size: int, workers: int) -> Counter:
    through = Counter()
    for c in maximum_cliques(g, size, workers):
        for e in combinations(c, 2):
            through[e] += 1
    return through


def edge_clique_statistic(g: Graph, size: int = 8, workers: int = 1) -> Counter:
    """Distribution over edges of the number of size-cliques through the edge."""
    through = _edges_through(g, size, workers)
    return Counter(through.get(e, 0) for e in g.edges())


def pair_clique_statistic(g: Graph, size: int = 8, workers: int = 1) -> Counter:
    """Distribution over all vertex pairs of (adjacent?, shared cliques)."""
    through = _edges_through(g, size, workers)
    return Counter(
        (bool(g.adj[u] >> v & 1), through.get((u, v), 0)) for u in range(g.order) for v in range(u + 1, g.order)
    )


def edge_classes(g: Graph, size: int, workers: int = 1) -> dict[int, list[tuple[int, int]]]:
    through = _edges_through(g, size, workers)
    out: dict[int, list] = {}
    for e in g.edges():
        out.setdefault(through.get(e, 0), []).append(e)
    return out


# Clique sizes tried in turn.  Through-edge counts of 8-cliques coincide on
# the two graphs; 5-cliques separate them.
CERTIFICATE_SIZES = (8, 5, 7, 6, 4)


def distinguish_graphs(gamma: Graph, ortho: Graph, workers: int = 1) -> Report:
    """Certificate that gamma is not isomorphic to ortho: an edge statistic
    that is constant on ortho but takes several values on gamma."""
    rep = Report("distinguish_graphs")
    a, b = srg_certify(gamma), srg_certify(ortho)
    rep.expect(a.ok and a.params == b.params, ("parameters", a.params, b.params))
    rep.details["srg"] = a.params
    rep.details["cliques"] = {
        "gamma": len(maximum_cliques(gamma, 8, workers)),
        "orthogonality": len(maximum_cliques(ortho, 8, workers)),
    }
    tried = {}
    for size in CERTIFICATE_SIZES:
        sa = edge_clique_statistic(gamma, size, workers)
        sb = edge_clique_statistic(ortho, size, workers)
        tried[size] = {"gamma": dict(sorted(sa.items())), "orthogonality": dict(sorted(sb.items()))}
        if len(sb) == 1 and len(sa) >= 2:
            rep.details["certificate"] = f"edge {size}-clique counts"
            rep.details["statistics"] = tried
            rep.checked += 1
            return rep
        if size == 8 and pair_clique_statistic(gamma, 8, workers) != pair_clique_statistic(ortho, 8, workers):
            rep.details["certificate"] = "pair 8-clique counts"
            rep.details["statistics"] = tried
            rep.checked += 1
            return rep
    rep.details["statistics"] = tried
    rep.details["certificate"] = "inconclusive"
    rep.expect(False, "inconclusive")
    return rep


def special_edges_report(gamma: Graph, workers: int = 1) -> Report:
    """The minority edge class of gamma under 5-clique counts splits the
    vertices into 15 disjoint 8-cliques."""
    rep = Report("special_edges")
    classes = edge_classes(gamma, 5, workers)
    rep.expect(len(classes) == 2, ("classes", sorted(classes)))
    small = min(classes.values(), key=len)
    h = graph_from_pairs(gamma.order, small, "special")
    seen, parts = 0, []
    for v in range(h.order):
        if not seen >> v & 1:
            part = h.adj[v] | 1 << v
            rep.expect(all(h.adj[w] | 1 << w == part for w in iter_bits(part)), ("not a clique", v))
            seen |= part
            parts.append(part.bit_count())
    rep.details["parts"] = parts
    rep.expect(parts == [8] * 15, parts)
    return rep


def xht_report(rs: RootSystem) -> Report:
    """Every component of an alignment-free element has coefficient 1 on the
    unique simple component of theta_N."""
    X = space(rs)
    XI = alignment_free(rs)
    rep = Report("x_height_one")
    j = XI.x_index - 1
    for x in XI.members:
        for b in X.elements[x]:
            rep.expect(rs.positive_roots[b][j] == 1, (x, b))
    return rep


def gamma_intersections(rs: RootSystem) -> Report:
    _require(rs, "E8")
    X = space(rs)
    XI = alignment_free(rs)
    rep = Report("same_parity_intersections")
    sizes = Counter()
    for part in (XI.even, XI.odd):
        for x, y in combinations(part, 2):
            k = len(set(X.elements[x]) & set(X.elements[y]))
            sizes[k] += 1
            rep.expect(k in (0, 2), (x, y, k))
    rep.details["sizes"] = dict(sorted(sizes.items()))
    return rep
