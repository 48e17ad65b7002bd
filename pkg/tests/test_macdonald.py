import random

import numpy as np
import pytest

from orthoroots import system
from orthoroots.errors import UsageError
from orthoroots.macdonald import (
    MacElement,
    act_element,
    bases,
    change_of_basis,
    confluence_report,
    euler_numbers,
    expand_dense,
    is_unitriangular,
    matmul,
    maximal_in_B_order,
    normalize_noncrossing,
    normalize_nonnesting,
    odd_height_report,
    oracle_report,
    ptolemy_rewrite_C,
    ptolemy_rewrite_N,
    sign_coherence_check,
    simple_reflection_on_basis,
)
from orthoroots.nroots import format_matching, matching_of, space
from orthoroots.polys import exact_rank, linear_product, rank_mod_p
from orthoroots.qpar import build_order

from conftest import SMALL

DIMENSIONS = {"D4": 2, "D6": 5, "D8": 14, "D10": 42, "E7": 15, "E8": 50}
THETA_C_SUMS = {"D4": 2, "D6": 5, "D8": 16, "D10": 61, "E7": 17, "E8": 88}

D6_NONCROSSING = {"{16,25,34}", "{16,23,45}", "{14,23,56}", "{12,36,45}", "{12,34,56}"}
D6_NONNESTING = {"{14,25,36}", "{13,25,46}", "{13,24,56}", "{12,35,46}", "{12,34,56}"}


def _names(rs, ids):
    X = space(rs)
    return [format_matching(matching_of(rs, X.elements[x])) for x in ids]


def test_d6_bases(d6):
    nc, nn = bases(d6)
    assert set(_names(d6, nc)) == D6_NONCROSSING
    assert set(_names(d6, nn)) == D6_NONNESTING


@pytest.mark.parametrize("name", list(DIMENSIONS))
def test_dimensions(name):
    nc, nn = bases(system(name))
    assert len(nc) == len(nn) == DIMENSIONS[name]


def test_d6_ptolemy(d6):
    X = space(d6)
    x = X.index[tuple(sorted(space(d6).elements[14]))]
    q = X.quads[x][0][0]
    nesting, alignment = ptolemy_rewrite_C(d6, x, q)
    assert format_matching(matching_of(d6, nesting)) == "{14,26,35}"
    assert format_matching(matching_of(d6, alignment)) == "{14,23,56}"
    lhs = expand_dense(d6, X.elements[x])
    assert np.array_equal(lhs, expand_dense(d6, nesting) + expand_dense(d6, alignment))
    with pytest.raises(UsageError):
        ptolemy_rewrite_N(d6, x, q)


def test_d6_theta_c_expansion(d6):
    P = build_order(d6)
    e = normalize_noncrossing(d6, P.theta_C)
    assert set(_names(d6, e.terms)) == D6_NONCROSSING
    assert set(e.terms.values()) == {1}


def test_d6_change_of_basis(d6):
    cob = change_of_basis(d6)
    assert _names(d6, cob.ordering) == ["{12,34,56}", "{14,23,56}", "{12,36,45}", "{16,23,45}", "{16,25,34}"]
    assert _names(d6, cob.nonnesting) == ["{12,34,56}", "{13,24,56}", "{12,35,46}", "{13,25,46}", "{14,25,36}"]
    assert cob.matrix == [[1, 0, 0, 0, 0], [1, 1, 0, 0, 0], [1, 0, 1, 0, 0], [1, 1, 1, 1, 0], [1, 1, 1, 1, 1]]
    assert cob.inverse == [[1, 0, 0, 0, 0], [-1, 1, 0, 0, 0], [-1, 0, 1, 0, 0], [1, -1, -1, 1, 0], [0, 0, 0, -1, 1]]


def test_incompatible_ordering_rejected(d6):
    cob = change_of_basis(d6)
    with pytest.raises(UsageError):
        change_of_basis(d6, list(reversed(cob.ordering)))


@pytest.mark.parametrize("name", list(DIMENSIONS))
def test_change_of_basis_unitriangular(name):
    rs = system(name)
    cob = change_of_basis(rs)
    d = len(cob.ordering)
    assert is_unitriangular(cob.matrix) and is_unitriangular(cob.inverse)
    assert matmul(cob.matrix, cob.inverse) == [[int(i == j) for j in range(d)] for i in range(d)]


@pytest.mark.parametrize("name", list(DIMENSIONS))
def test_theta_c_sums_and_positivity(name):
    rs = system(name)
    P = build_order(rs)
    assert sum(normalize_noncrossing(rs, P.theta_C).terms.values()) == THETA_C_SUMS[name]
    assert maximal_in_B_order(rs) == P.theta_C
    assert sign_coherence_check(rs).passed
    assert odd_height_report(rs).passed


def test_euler_numbers():
    assert euler_numbers(12) == [1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521, 353792]
    for name in ("D4", "D6", "D8", "D10"):
        k = system(name).stype.k
        assert euler_numbers(k + 2)[k + 1] == THETA_C_SUMS[name]


@pytest.mark.parametrize("name", SMALL)
def test_polynomial_oracle(name):
    rep = oracle_report(system(name))
    assert rep.passed and rep.details["basis_rank"] == DIMENSIONS[name]


def test_simple_reflections_on_basis(e7):
    nc, _ = bases(e7)
    for i in range(1, 8):
        for g in nc:
            out = simple_reflection_on_basis(e7, i, g)
            assert len(out) in (1, 2)
    with pytest.raises(UsageError):
        simple_reflection_on_basis(e7, 1, build_order(e7).theta_C)


def test_random_strategies_agree(e7):
    assert confluence_report(e7, seed=3, elements=10, strategies=10).passed
    e = MacElement({0: 2, 5: -1, 77: 3})
    assert normalize_noncrossing(e7, e, rng=random.Random(1)) == normalize_noncrossing(e7, e)
    assert normalize_nonnesting(e7, e, rng=random.Random(2)) == normalize_nonnesting(e7, e)


def test_mac_element_arithmetic():
    a = MacElement({1: 2, 3: -1})
    b = MacElement({1: -2, 4: 5})
    assert (a + b).terms == {3: -1, 4: 5}
    assert (a - a).terms == {}
    assert a.scale(3).terms == {1: 6, 3: -3}
    assert MacElement.basis(7) == MacElement({7: 1})


def test_action_is_signed_permutation(d6):
    X = space(d6)
    e = MacElement({0: 1})
    out = act_element(d6, [1], e)
    assert out == MacElement({0: -1})
    assert act_element(d6, [1, 1], MacElement({x: 1 for x in range(len(X))})) == MacElement(
        {x: 1 for x in range(len(X))}
    )


def test_polys_rank_helpers():
    p = linear_product([(1, 1), (1, -1)])
    q = linear_product([(1, 0), (1, 0)])
    r = linear_product([(0, 1), (0, 1)])
    assert p.tolist() == [1, 0, -1]
    assert exact_rank([p, q, r]) == 2
    assert rank_mod_p(np.array([p, q, r])) == 2
