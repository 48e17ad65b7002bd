"""Property-based checks of the algebraic invariants."""

import random

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from orthoroots import system
from orthoroots.macdonald import (
    MacElement,
    act_element,
    expand_dense,
    normalize_noncrossing,
    normalize_nonnesting,
)
from orthoroots.nroots import act_signed, reflect_nroot, sigma, space
from orthoroots.polys import linear_product

NAMES = ["D4", "D6", "D8", "E7", "E8"]
names = st.sampled_from(NAMES)


@st.composite
def system_and_word(draw, max_len=8):
    rs = system(draw(names))
    word = draw(st.lists(st.integers(1, rs.rank), max_size=max_len))
    return rs, word


@st.composite
def system_and_roots(draw):
    rs = system(draw(names))
    a, b = draw(st.integers(0, rs.num_positive - 1)), draw(st.integers(0, rs.num_positive - 1))
    return rs, rs.positive_roots[a], rs.positive_roots[b]


@st.composite
def element_of(draw, rs, size=4):
    X = space(rs)
    terms = draw(st.dictionaries(st.integers(0, len(X) - 1), st.integers(-3, 3), max_size=size))
    return MacElement(terms)


@given(system_and_roots(), st.integers(0, 119))
def test_reflection_preserves_form(data, k):
    rs, a, b = data
    c = rs.positive_roots[k % rs.num_positive]
    assert rs.bilinear(rs.reflect(c, a), rs.reflect(c, b)) == rs.bilinear(a, b)
    assert rs.reflect(c, rs.reflect(c, a)) == a
    assert rs.is_root(rs.reflect(c, a))


@given(system_and_word(), system_and_word())
def test_word_action_composes(d1, d2):
    rs, u = d1
    v = [i for i in d2[1] if i <= rs.rank]
    X = space(rs)
    for x in (0, len(X) // 2, len(X) - 1):
        s1, y = X.act_id(v, x)
        s2, z = X.act_id(u, y)
        s, w = X.act_id(u + v, x)
        assert (s, w) == (s1 * s2, z)


@given(system_and_word(max_len=5), st.integers(0, 2024))
def test_sigma_is_linear(data, k):
    rs, word = data
    X = space(rs)
    x = X.elements[k % len(X)]
    _, y = act_signed(rs, word, x)
    # sigma(w x) is the sum of |w b| over the components b of x
    expected = [0] * rs.rank
    for b in x:
        img = rs.act_word(word, rs.positive_roots[b])
        s = 1 if any(c > 0 for c in img) else -1
        expected = [e + s * c for e, c in zip(expected, img)]
    assert tuple(expected) == sigma(rs, y)


@given(system_and_roots(), st.integers(0, 2024))
def test_reflection_sign_matches_polynomial(data, k):
    rs, a, _ = data
    if rs.stype.name == "E8":
        return
    X = space(rs)
    xid = k % len(X)
    r = rs.root_id(a)
    sign, y = reflect_nroot(rs, r, X.elements[xid])
    forms = [tuple(int(c) for c in rs.embedding[b]) for b in X.elements[xid]]
    mirror = [int(c) for c in rs.embedding[r]]
    norm = sum(c * c for c in mirror)
    moved = []
    for f in forms:
        dot = sum(p * q for p, q in zip(f, mirror))
        moved.append(tuple(p - 2 * dot * q // norm for p, q in zip(f, mirror)))
    assert np.array_equal(linear_product(moved), sign * expand_dense(rs, y))


@given(st.data())
def test_action_commutes_with_normalization(data):
    rs = system(data.draw(st.sampled_from(["D4", "D6", "D8", "E7"])))
    e = data.draw(element_of(rs))
    word = data.draw(st.lists(st.integers(1, rs.rank), max_size=4))
    lhs = normalize_noncrossing(rs, act_element(rs, word, e))
    rhs = normalize_noncrossing(rs, act_element(rs, word, normalize_noncrossing(rs, e)))
    assert lhs == rhs
    lhs = normalize_nonnesting(rs, act_element(rs, word, e))
    rhs = normalize_nonnesting(rs, act_element(rs, word, normalize_nonnesting(rs, e)))
    assert lhs == rhs


@given(st.data())
def test_ptolemy_polynomial_identity(data):
    rs = system(data.draw(st.sampled_from(["D6", "D8", "E7"])))
    X = space(rs)
    x = data.draw(st.integers(0, len(X) - 1))
    lhs = expand_dense(rs, X.elements[x])
    for target in (normalize_noncrossing(rs, x), normalize_nonnesting(rs, x)):
        rhs = sum(c * expand_dense(rs, X.elements[y]) for y, c in target.terms.items())
        assert np.array_equal(lhs, rhs)


@given(st.data(), st.integers(0, 2**32))
def test_randomized_rewriting_is_confluent(data, seed):
    rs = system(data.draw(st.sampled_from(["D6", "D8", "E7", "E8"])))
    e = data.draw(element_of(rs, size=3))
    rng = random.Random(seed)
    assert normalize_noncrossing(rs, e, rng=rng) == normalize_noncrossing(rs, e)
    assert normalize_nonnesting(rs, e, rng=rng) == normalize_nonnesting(rs, e)


@given(st.data())
def test_normal_forms_are_idempotent(data):
    rs = system(data.draw(st.sampled_from(["D8", "E7"])))
    e = data.draw(element_of(rs))
    nc = normalize_noncrossing(rs, e)
    assert normalize_noncrossing(rs, nc) == nc
    assert all(space(rs).counts[x].C == 0 for x in nc.terms)
    assert normalize_noncrossing(rs, normalize_nonnesting(rs, e)) == nc


@given(system_and_word(max_len=6))
def test_level_changes_by_at_most_word_length(data):
    rs, word = data
    X = space(rs)
    for x in range(0, len(X), max(1, len(X) // 7)):
        _, y = X.act_id(word, x)
        assert abs(X.level[y] - X.level[x]) <= len(word)
