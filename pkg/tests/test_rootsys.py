from fractions import Fraction

import pytest

from orthoroots import SystemType, build, system
from orthoroots.errors import ConfigError, UsageError
from orthoroots.rootsys import abs_root, gram_matrix, pack

from conftest import ALL

POSITIVE = {"D4": 12, "D6": 30, "D8": 56, "D10": 90, "E7": 63, "E8": 120}
TOP_HEIGHT = {"D4": 5, "D6": 9, "D8": 13, "D10": 17, "E7": 17, "E8": 29}


@pytest.mark.parametrize("name", ALL)
def test_positive_root_counts(name):
    rs = system(name)
    assert rs.num_positive == POSITIVE[name]
    assert rs.height(rs.highest_root()) == TOP_HEIGHT[name] == rs.stype.coxeter_number - 1


@pytest.mark.parametrize("name", ALL)
def test_canonical_order(name):
    rs = system(name)
    keys = [(rs.heights[i], r) for i, r in enumerate(rs.positive_roots)]
    assert keys == sorted(keys)
    assert all(rs.root_id(r) == i for i, r in enumerate(rs.positive_roots))


@pytest.mark.parametrize("name", ALL)
def test_embedding_matches_form(name):
    rs = system(name)
    scale = Fraction(1) if rs.stype.is_type_d else Fraction(1, 4)
    for a in range(rs.num_positive):
        for b in range(a, rs.num_positive):
            dot = sum(x * y for x, y in zip(rs.embedding[a], rs.embedding[b]))
            assert scale * dot == rs.pairing[a][b]


def test_highest_roots(e7, e8):
    assert e7.highest_root() == (2, 3, 4, 3, 2, 1, 2)
    assert e7.embed(e7.highest_root()) == (-2, 2, 0, 0, 0, 0, 0, 0)
    assert e8.highest_root() == (2, 3, 4, 6, 5, 4, 3, 2)
    assert e8.embed(e8.highest_root()) == (0, 0, 0, 0, 0, 0, 2, 2)
    assert system("D6").highest_root() == (1, 2, 2, 2, 1, 1)


def test_d4_gram():
    assert gram_matrix(SystemType("D", 4)) == (
        (2, -1, 0, 0),
        (-1, 2, -1, -1),
        (0, -1, 2, 0),
        (0, -1, 0, 2),
    )


def test_reflection_examples(d6):
    a1, a2 = d6.simple_root(1), d6.simple_root(2)
    assert d6.reflect(a1, a1) == tuple(-c for c in a1)
    assert d6.reflect(a1, a2) == (1, 1, 0, 0, 0, 0)
    assert d6.act_word([1, 2], a1) == (0, 1, 0, 0, 0, 0)


def test_reflection_tables(e7):
    for a in range(e7.num_positive):
        for b in range(e7.num_positive):
            img = e7.reflect(e7.positive_roots[a], e7.positive_roots[b])
            pos, sign = abs_root(img)
            assert e7.reflection[a][b] == e7.root_id(pos)
            assert e7.reflection_sign[a][b] == sign


def test_orthogonality_rows(e8):
    for a in range(e8.num_positive):
        assert e8.orth[a].bit_count() == 63
        assert not e8.orth[a] >> a & 1


def test_simple_ids_follow_dynkin_labels(e8):
    for i in range(1, 9):
        rid = e8.simple_ids[i - 1]
        assert e8.positive_roots[rid] == e8.simple_root(i)
        assert e8.simple_index_of(rid) == i


def test_json_roundtrip_is_deterministic():
    assert build("D4").to_json() == build("D4").to_json()
    d = system("E7").to_json_dict()
    assert d["type"] == "E7" and len(d["roots"]) == 63
    assert all("/" in c for row in d["embedding"] for c in row)


def test_pack_keeps_order():
    assert pack((1, 0)) != pack((0, 1))
    assert pack((0, 0, 0)) == 0


@pytest.mark.parametrize("text", ["A3", "D5", "D2", "E6", "E9", "", "F4"])
def test_unsupported_types(text):
    with pytest.raises(ConfigError):
        SystemType.parse(text)


def test_parse_is_case_insensitive():
    assert SystemType.parse("e8") == SystemType("E8", 8)
    assert SystemType.parse(" d10 ").name == "D10"


def test_bad_vectors(d6):
    with pytest.raises(UsageError):
        d6.bilinear((1, 0), (0, 1))
    with pytest.raises(UsageError):
        d6.root_id((1, 0, 1, 0, 0, 0))
    with pytest.raises(UsageError):
        d6.simple_root(7)
    with pytest.raises(UsageError):
        SystemType("E7", 7).k
