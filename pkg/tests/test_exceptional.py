from collections import Counter

import pytest

from orthoroots import system
from orthoroots.errors import InvariantViolation, UnsupportedTypeError
from orthoroots.exceptional import (
    FanoLabelling,
    all_fano_planes,
    build_gamma,
    build_orthogonality_graph,
    determinant,
    distinguish_graphs,
    e7_level_formula,
    edge_clique_statistic,
    fano_labellings,
    fano_report,
    gamma_intersections,
    graph_from_pairs,
    hadamard_check,
    labelling_pair_intersections,
    level_from_labelling,
    maximum_cliques,
    pair_clique_statistic,
    sign_matrix,
    special_edges_report,
    srg_certify,
    steiner_all,
    steiner_quadruple_system,
    xht_report,
    xor_closed,
)
from orthoroots.nroots import space
from orthoroots.qpar import build_order

L_C = ("127", "136", "145", "235", "246", "347", "567")
L_N = ("123", "145", "167", "246", "257", "347", "356")

# sign patterns of the components in standard coordinates, as row sets
E7_SIGNS_C = {"--+-++-+", "--++--++", "---++++-", "-+--+-++", "-+-+-+-+", "-++--++-", "-++++---"}
E7_SIGNS_N = {"----++++", "--++--++", "-+-+-+-+", "-+-++-+-", "-++--++-", "-++-+--+", "--++++--"}
E8_SIGNS_C = {"++----++", "+-+--+-+", "+--++--+", "-++-+--+", "-+-+-+-+", "--++--++", "----++++", "++++++++"}
E8_SIGNS_N = {"+------+", "-+++---+", "-+--++-+", "--+-+-++", "---+-+++", "+++--+++", "++-++-++", "+-++++-+"}


def _signs(rs, x):
    return {"".join("+" if v > 0 else "-" for v in row) for row in sign_matrix(rs, x)}


def test_sign_matrices(e7, e8):
    P7, P8 = build_order(e7), build_order(e8)
    assert _signs(e7, P7.theta_C) == E7_SIGNS_C
    assert _signs(e7, P7.theta_N) == E7_SIGNS_N
    assert _signs(e8, P8.theta_C) == E8_SIGNS_C
    assert _signs(e8, P8.theta_N) == E8_SIGNS_N


def test_fano_extremes(e7):
    P = build_order(e7)
    labels = fano_labellings(e7)
    assert labels[P.theta_C].triples == L_C
    assert labels[P.theta_N].triples == L_N
    assert xor_closed(labels[P.theta_N]) and not xor_closed(labels[P.theta_C])


def test_fano_bijection(e7):
    assert len(all_fano_planes()) == 30
    rep = fano_report(e7)
    assert rep.passed, rep.witnesses


def test_fano_pairs_and_levels(e7):
    rep = labelling_pair_intersections(e7)
    assert rep.passed and rep.checked == 2 * 105
    assert rep.details["cross_parity"] == {0: 120, 3: 105}
    assert e7_level_formula(e7).passed
    assert level_from_labelling(FanoLabelling(L_C)) == 7
    assert level_from_labelling(FanoLabelling(L_N)) == 14


def test_fano_labelling_validation():
    with pytest.raises(InvariantViolation):
        FanoLabelling(("123", "145", "167", "246", "257", "347", "357"))


@pytest.mark.parametrize("name", ["E7", "E8"])
def test_x_height_one(name):
    assert xht_report(system(name)).passed


def test_steiner(e8):
    P = build_order(e8)
    assert steiner_quadruple_system(e8, P.theta_C).passed
    assert steiner_quadruple_system(e8, space(e8).elements[P.theta_N]).passed
    assert steiner_all(e8).checked == 2025


def test_hadamard(e8):
    rep = hadamard_check(e8)
    assert rep.passed
    assert abs(determinant(sign_matrix(e8, build_order(e8).theta_C))) == 4096


def test_determinant():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[1, 2], [2, 4]]) == 0


def test_graphs(e8):
    g, o = build_gamma(e8), build_orthogonality_graph(e8)
    assert g.order == o.order == 120
    assert len(g.edges()) == len(o.edges()) == 3780
    assert srg_certify(g).params == srg_certify(o).params == (120, 63, 30, 36)
    assert gamma_intersections(e8).details["sizes"] == {0: 7560, 2: 6720}


def test_srg_failure_paths():
    k4 = graph_from_pairs(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    res = srg_certify(k4)
    assert not res.ok and res.witness == ("no nonadjacent pair",)
    path = graph_from_pairs(3, [(0, 1), (1, 2)])
    assert srg_certify(path).witness[0] == "degree"
    c6 = graph_from_pairs(6, [(i, (i + 1) % 6) for i in range(6)])
    assert srg_certify(c6).witness[0] == "nonadjacent"
    c5 = graph_from_pairs(5, [(i, (i + 1) % 5) for i in range(5)])
    assert srg_certify(c5).params == (5, 2, 0, 1)


def test_cliques_are_nroots(e8):
    o = build_orthogonality_graph(e8)
    assert sorted(maximum_cliques(o, 8)) == sorted(space(e8).elements)
    assert len(maximum_cliques(build_gamma(e8), 8)) == 2025


def test_edge_statistics(e8):
    g, o = build_gamma(e8), build_orthogonality_graph(e8)
    assert edge_clique_statistic(g, 8) == edge_clique_statistic(o, 8) == Counter({15: 3780})
    assert pair_clique_statistic(g, 8) == pair_clique_statistic(o, 8)
    assert edge_clique_statistic(g, 5) == Counter({332: 3360, 300: 420})
    assert edge_clique_statistic(o, 5) == Counter({300: 3780})


def test_distinguish(e8):
    g, o = build_gamma(e8), build_orthogonality_graph(e8)
    rep = distinguish_graphs(g, o)
    assert rep.passed and rep.details["certificate"] == "edge 5-clique counts"
    assert special_edges_report(g).passed


def test_same_graph_is_inconclusive(e8):
    o = build_orthogonality_graph(e8)
    assert not distinguish_graphs(o, o).passed


def test_exports_are_stable(e8):
    g = build_gamma(e8)
    text = g.to_edge_list()
    assert text == build_gamma(e8).to_edge_list()
    assert len(text.splitlines()) == 3781
    dot = g.to_dot()
    assert dot.startswith("graph Gamma {") and dot.count("--") == 3780


def test_type_guards(d6, e7):
    with pytest.raises(UnsupportedTypeError):
        fano_labellings(d6)
    with pytest.raises(UnsupportedTypeError):
        build_gamma(e7)
    with pytest.raises(UnsupportedTypeError):
        hadamard_check(e7)
