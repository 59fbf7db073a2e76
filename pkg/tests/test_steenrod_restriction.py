import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from ogring import CoeffMode, RingParams, UnsupportedRankError
from ogring.chow_ring import ChowElement, evaluate, two_adic_valuation
from ogring.error import (IndexRangeError, NotDivisibleError, PrecisionError)
from ogring.expression import E1, Ci, Ei, Int, Product, product, total
from ogring.steenrod_restriction import (deg_over_index, res, shat, shat_set,
                                         torsion_index, total_steenrod_e)


def test_shat_examples():
    assert shat(7, 8) == total([Int(1) * Ci(7), Int(6) * Ci(8)])
    assert shat(6, 8) == total([Int(1) * Ci(6), Int(5) * Ci(7), Int(10) * Ci(8)])
    assert str(shat(7, 8)) == '(1*c(7) + 6*c(8))'
    for n in (4, 8, 16):
        assert shat(n, n) == total([Int(1) * Ci(n)])


def test_shat_range():
    with pytest.raises(IndexRangeError):
        shat(0, 8)
    with pytest.raises(IndexRangeError):
        shat(9, 8)


def test_shat_set():
    assert shat_set((), 8) == Product(())
    assert shat_set({3, 2}, 8) == Product((shat(2, 8), shat(3, 8)))


def test_restriction(p8):
    assert res(Ci(3), p8) == ChowElement(p8, {(3,): 2})
    assert res(E1 * Ci(2), p8) == evaluate(Int(2) * E1 * Ei(2), p8)
    assert res(shat_set((), 8), p8) == ChowElement.unit(p8)


def test_shat23(p8):
    expected = evaluate(Int(4) * (Ei(2) + Ei(3)) * (Ei(3) + Int(2) * Ei(4) + Ei(5)), p8)
    assert res(shat_set({2, 3}, 8), p8) == expected


def test_total_steenrod_e(p8):
    assert str(total_steenrod_e(2)) == '(e + e^2)^2'
    e1 = ChowElement.generator(p8, 1)
    assert evaluate(total_steenrod_e(2), p8) == e1 ** 2 + e1 ** 3 * 2 + e1 ** 4


def test_torsion_index():
    assert torsion_index(8) == 16
    assert torsion_index(16) == 1024
    assert torsion_index(32) == 2 ** 24
    assert torsion_index(8) == RingParams(8).ind_x
    with pytest.raises(UnsupportedRankError):
        torsion_index(12)


def test_deg_over_index(p8):
    point = ChowElement.point(p8)
    assert deg_over_index(point * 16) == 1
    assert deg_over_index(point * 48 + ChowElement.generator(p8, 1)) == 1
    assert deg_over_index(point * 32) == 0
    with pytest.raises(NotDivisibleError):
        deg_over_index(point * 8)


def test_deg_over_index_needs_precision():
    coarse = RingParams(8, CoeffMode.modulus(4))
    with pytest.raises(PrecisionError):
        deg_over_index(ChowElement.point(coarse))
    fine = RingParams(8, CoeffMode.modulus())
    assert deg_over_index(ChowElement.point(fine) * 16) == 1


def test_theorem_element_degree_at_8(p8):
    # e^15 res(S({2, 3, 6, 7})) at n = 8
    a = res(E1 ** 15 * shat_set((2, 3, 6, 7), 8), p8)
    assert deg_over_index(a) == 1


def _chow_side_terms(n):
    symbol = st.one_of(
        st.integers(1, n).map(Ci),
        st.integers(1, n).map(Ei),
        st.just(E1),
        st.integers(-3, 3).map(Int),
    )
    return st.lists(symbol, min_size=1, max_size=3).map(product)


@settings(max_examples=500, deadline=None, derandomize=True)
@given(data=st.data())
def test_res_is_a_ring_homomorphism(data):
    params = RingParams(6)
    a = data.draw(_chow_side_terms(6))
    b = data.draw(_chow_side_terms(6))
    assert res(a * b, params) == res(a, params) * res(b, params)
    assert res(a + b, params) == res(a, params) + res(b, params)
    assert res(Int(1), params) == ChowElement.unit(params)


@settings(max_examples=500, deadline=None, derandomize=True)
@given(data=st.data())
def test_res_of_shat_set_divisibility(data):
    n = data.draw(st.sampled_from([4, 8]))
    indices = data.draw(st.sets(st.integers(1, n), max_size=4))
    x = res(shat_set(indices, n), RingParams(n))
    assert two_adic_valuation(x).at_least(len(indices))
