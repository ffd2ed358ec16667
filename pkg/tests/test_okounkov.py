"""Type O values: expansion, product rule and the dimension checks."""
import pytest

from qmzv.core import ArgumentTooSmall, LinComb, parse_pyword
from qmzv.okounkov import (
    O_RELATIONS,
    OSplit,
    conjectured_dimensions,
    direct_o_value,
    enumerate_o,
    eval_o,
    f_o_product_holds,
    o_lincomb_to_compositions,
    oword_expand,
    series_rank,
    verify_okounkov,
)
from qmzv.qseries import eval_lincomb


def test_split_bounds():
    for s in range(2, 12):
        sp = OSplit.of(s)
        assert sp.minus + sp.plus == s
        assert (s - 1) / 2 <= sp.minus <= s / 2 <= sp.plus <= (s + 1) / 2
        assert (sp.minus == sp.plus) == (s % 2 == 0)
    with pytest.raises(ArgumentTooSmall):
        OSplit.of(1)


def test_expansion_examples():
    P = parse_pyword
    assert oword_expand([2]) == LinComb([(P("rpy"), 2)])
    assert oword_expand([3]) == LinComb([(P("rppy"), 1), (P("rrpy"), 1)])
    assert len(oword_expand([3, 3])) == 4
    with pytest.raises(ArgumentTooSmall):
        oword_expand([2, 1])


@pytest.mark.parametrize("s", [(2,), (3,), (2, 3), (3, 3), (4, 2), (2, 2, 3)])
def test_expansion_matches_direct_sum(s):
    assert eval_o(s, 30) == direct_o_value(s, 30)


def test_product_rule():
    for r in range(2, 9):
        for s in range(2, 9):
            assert f_o_product_holds(r, s, 50)


def test_conjectured_series():
    dims = conjectured_dimensions(12)
    assert [dims[w] for w in range(2, 13)] == [1, 2, 4, 7, 11, 18, 27, 42, 63, 95, 142]


def test_word_counts():
    assert [len(enumerate_o(w)) for w in range(2, 13)] == [1, 2, 4, 7, 12, 20, 33, 54, 88, 143, 232]


def test_small_dimensions():
    assert series_rank(4) == 4
    rep = verify_okounkov(2)
    assert rep.series_rank == 1 and rep.certified_dim == 1


def test_listed_relations_that_hold():
    # the second listed relation, 4z[7] = z[2,3] + z[3,2] + 8z[3,4] + 6z[4,3] - 4z[5,2]
    assert eval_lincomb(o_lincomb_to_compositions(O_RELATIONS[1]), order=100).is_zero()


def test_weight_six_kernel():
    # the unique relation of weight <= 6 is 4z[6] + z[2,2] - 12z[3,3] + 6z[4,2] = 0
    rel = {(6,): 4, (2, 2): 1, (3, 3): -12, (4, 2): 6}
    assert eval_lincomb(o_lincomb_to_compositions(rel), order=100).is_zero()
    assert series_rank(6) == len(enumerate_o(6)) - 1


def test_trivial_relation():
    assert eval_lincomb(o_lincomb_to_compositions({}), order=10).is_zero()
