import math

import hypothesis.strategies as st
import pytest
from hypothesis import given

from ogring import CoeffMode, RingParams, UnsupportedRankError
from ogring.error import (ExpressionTypeError, MalformedInputError,
                          ParameterError, PrecisionError)
from ogring.expression import (E1, F, G, Ci, Ei, Int, Power, Product, Sum, T,
                               c_set, e_set, f_set, g_set)
from ogring.valuation import Valuation, is_two_power, v2, v2_factorial


@given(st.integers(1, 10 ** 6), st.integers(0, 40))
def test_v2(odd_part, k):
    odd = 2 * odd_part - 1
    assert v2(odd << k) == k
    assert v2(-(odd << k)) == k


def test_v2_zero():
    assert v2(0) == math.inf


@given(st.integers(0, 200))
def test_v2_factorial_matches_direct_count(j):
    assert v2_factorial(j) == v2(math.factorial(j))


def test_is_two_power():
    assert [n for n in range(1, 20) if is_two_power(n)] == [1, 2, 4, 8, 16]
    assert not is_two_power(0)


def test_valuation_cap():
    v = Valuation.from_minimum(9, cap=5)
    assert v.capped
    assert v.at_least(5)
    with pytest.raises(PrecisionError):
        v.at_least(6)
    assert not Valuation.from_minimum(3, cap=5).at_least(4)
    assert Valuation(3) + 2 == 5
    assert Valuation(math.inf).to_json() == 'inf'
    assert sorted([Valuation(4), Valuation(1)]) == [Valuation(1), Valuation(4)]


def test_ring_params():
    p = RingParams(16)
    assert (p.dim_x, p.v_n, p.m, p.ind_x) == (136, 4, 10, 1024)
    assert p.is_theorem_rank
    assert p.modulus is None
    p.require_theorem_rank()

    odd = RingParams(12)
    assert odd.m is None
    assert not odd.is_theorem_rank
    with pytest.raises(UnsupportedRankError):
        odd.require_theorem_rank()

    with pytest.raises(MalformedInputError):
        RingParams(0)
    with pytest.raises(MalformedInputError):
        RingParams(True)


def test_coeff_mode_resolution():
    p = RingParams(8, CoeffMode.modulus())
    assert p.coeff_mode == CoeffMode.modulus(7)
    assert p.modulus == 128
    assert p.reduce(130) == 2
    assert p.with_coeff(CoeffMode.exact()) == RingParams(8)
    with pytest.raises(ParameterError):
        RingParams(12, CoeffMode.modulus())
    with pytest.raises(UnsupportedRankError):
        RingParams(8, CoeffMode.modulus(6)).require_theorem_rank()


def test_coeff_mode_text():
    assert str(CoeffMode.modulus(13)) == 'mod:13'
    assert str(CoeffMode.modulus()) == 'mod'
    assert repr(CoeffMode.exact()) == "CoeffMode('exact')"
    with pytest.raises(ParameterError):
        CoeffMode('exact', 3)
    with pytest.raises(ParameterError):
        CoeffMode('float')


def test_expression_building():
    expr = F(1) ** 3 * G(2) - T
    assert isinstance(expr, Sum)
    assert expr.kinds() == {'F', 'G', 'T'}
    assert str(expr) == '(F(1)^3*G(2) + -1*t)'
    assert 2 * F(1) == Product((Int(2), F(1)))
    assert F(1) + 1 == Sum((F(1), Int(1)))
    assert Power(E1, 2) == E1 ** 2
    assert hash(F(3) * G(2)) == hash(F(3) * G(2))


def test_set_helpers():
    assert f_set((3, 1)) == Product((F(1), F(3)))
    assert g_set((5,)) == G(5)
    assert e_set(()) == Product(())
    assert str(c_set((2, 1))) == 'c(1)*c(2)'


def test_side_checks():
    with pytest.raises(ExpressionTypeError):
        (F(1) * Ei(2)).require_side('K')
    with pytest.raises(ExpressionTypeError):
        (G(1) + Ci(2)).require_side('CH')
    (E1 * Ci(3)).require_side('CH')


def test_malformed_symbols():
    with pytest.raises(MalformedInputError):
        F(0)
    with pytest.raises(MalformedInputError):
        E1 ** -1
