import itertools
import math
from collections import defaultdict

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from ogring import CoeffMode, RingParams
from ogring.chow_ring import ChowElement, evaluate, two_adic_valuation
from ogring.error import (ExpressionTypeError, InconsistencyError,
                          IndexRangeError, MalformedInputError,
                          ParamsMismatchError, PrecisionError,
                          ValuationTooSmallError)
from ogring.expression import E1, F, G, Int, T, product
from ogring.grothendieck_rees import (ReesElement,
                                      canonical_ideal_decomposition,
                                      congruent_mod_ideal, eval_expression,
                                      express_in_point_line_basis,
                                      graded_component, ideal_valuation,
                                      line_class, mul_g, mul_t, pieri_mul,
                                      point_class, psi_substitute, recombine)
from ogring.suites.appendix import square_product_form
from ogring.suites.rees import companion_element, theorem_element, upper_sum


def _strict_partitions(n):
    for size in range(n + 1):
        yield from itertools.combinations(range(n, 0, -1), size)


def _ideal_power_boxes(params, N, lowest):
    """Coordinate boxes of I^N down to grade ``lowest``.

    I^N is spanned by 2^(N-q) t^q E[mu] u^l' for 0 <= q <= N and l' <= |mu|;
    each spanning vector is one coordinate, so the span is the box holding
    the gcd of the multiples reaching it.
    """
    boxes = defaultdict(int)
    for mu in _strict_partitions(params.n):
        for top in range(lowest, sum(mu) + 1):
            for q in range(N + 1):
                key = (mu, top - q)
                boxes[key] = math.gcd(boxes[key], 1 << (N - q))
    return boxes


def _in_ideal_power(x, N):
    lowest = min(l for _, l in x.terms)
    boxes = _ideal_power_boxes(x.params, N, lowest)
    return all(key in boxes and c % boxes[key] == 0 for key, c in x.terms.items())


@st.composite
def rees_elements(draw, params, max_terms=4):
    n = params.n
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        lam = tuple(sorted(draw(st.sets(st.integers(1, n), min_size=1, max_size=3)), reverse=True))
        l = draw(st.integers(sum(lam) - 4, sum(lam)))
        terms[(lam, l)] = draw(st.integers(-40, 40))
    return ReesElement(params, terms)


def test_generators(p8):
    assert pieri_mul(1, ReesElement.f(p8, 1)) == ReesElement.f(p8, 2)
    assert not pieri_mul(8, ReesElement.f(p8, 8))
    assert not pieri_mul(9, ReesElement.unit(p8))
    g3 = mul_g(3, ReesElement.unit(p8))
    assert g3 == ReesElement.f(p8, 3) * 2 - mul_t(ReesElement.f(p8, 4))
    assert ideal_valuation(g3) == 1
    assert eval_expression(G(3), p8) == g3


def test_t_lowers_grade(p8):
    x = mul_t(ReesElement.unit(p8), 2)
    assert x.grades() == [-2]
    assert ideal_valuation(x) == 2


def test_schubert_grade_check(p8):
    with pytest.raises(MalformedInputError):
        ReesElement.schubert(p8, (3,), 4)
    with pytest.raises(MalformedInputError):
        ReesElement.schubert(p8, (3, 3))


def test_parts_above_n_are_zero(p4):
    assert not ReesElement.schubert(p4, (5, 1))


@settings(max_examples=500, deadline=None, derandomize=True)
@given(data=st.data())
def test_valuation_matches_ideal_membership(data):
    params = RingParams(data.draw(st.integers(2, 5)))
    x = data.draw(rees_elements(params))
    v = ideal_valuation(x)
    if not x:
        assert v.is_infinite
        return
    for N in range(7):
        assert v.at_least(N) == _in_ideal_power(x, N)


@settings(max_examples=500, deadline=None, derandomize=True)
@given(data=st.data())
def test_valuation_of_two_and_t_multiples(data):
    x = data.draw(rees_elements(RingParams(6)))
    v = ideal_valuation(x)
    if not x:
        return
    assert ideal_valuation(x * 2) == v.value + 1
    assert ideal_valuation(mul_t(x)) == v.value + 1


@settings(max_examples=500, deadline=None, derandomize=True)
@given(data=st.data())
def test_generators_do_not_lower_valuation(data):
    x = data.draw(rees_elements(RingParams(6)))
    i = data.draw(st.integers(1, 7))
    v = ideal_valuation(x).value
    assert ideal_valuation(pieri_mul(i, x)).at_least(v)
    assert ideal_valuation(mul_g(i, x)).at_least(v + 1)


def _words(n, max_factors=5):
    symbol = st.one_of(
        st.integers(1, n).map(F),
        st.integers(1, n).map(G),
        st.just(T),
    )
    return st.lists(symbol, min_size=1, max_size=max_factors).map(product)


@settings(max_examples=500, deadline=None, derandomize=True)
@given(data=st.data())
def test_psi_image_is_at_least_as_divisible(data):
    params = RingParams(5)
    word = data.draw(_words(5))
    v = ideal_valuation(eval_expression(word, params))
    image = two_adic_valuation(evaluate(psi_substitute(word), params))
    if v.is_infinite:
        assert image.is_infinite
    else:
        assert image.at_least(v.value)


@pytest.mark.parametrize("build", [theorem_element, companion_element, upper_sum])
def test_psi_image_of_rank8_elements(ctx8, build):
    expr = build(ctx8.families)
    v = ideal_valuation(ctx8.rees(expr, ctx8.theorem_precision))
    assert two_adic_valuation(ctx8.chow(psi_substitute(expr))).at_least(v.value)


@settings(max_examples=500, deadline=None, derandomize=True)
@given(data=st.data())
def test_pieri_operators_commute(data):
    params = RingParams(6)
    x = data.draw(rees_elements(params))
    i = data.draw(st.integers(1, 6))
    j = data.draw(st.integers(1, 6))
    assert pieri_mul(i, pieri_mul(j, x)) == pieri_mul(j, pieri_mul(i, x))
    assert mul_t(pieri_mul(i, x)) == pieri_mul(i, mul_t(x))


@settings(max_examples=500, deadline=None, derandomize=True)
@given(data=st.data())
def test_truncation_commutes_with_generators(data):
    params = RingParams(data.draw(st.integers(5, 7)))
    x = data.draw(rees_elements(params))
    i = data.draw(st.integers(1, params.n + 1))
    N = data.draw(st.integers(0, 5))
    assert pieri_mul(i, x.with_precision(N)) == pieri_mul(i, x).with_precision(N)
    assert mul_g(i, x.with_precision(N)) == mul_g(i, x).with_precision(N)


def test_precision_truncation(p8):
    x = ReesElement(p8, {((3,), 1): 6, ((3,), 3): 5, ((4,), 4): 16}, precision=3)
    # gap 2 keeps one bit: 6 -> 0; gap 0 keeps three bits: 5 stays, 16 -> 0
    assert x.terms == {((3,), 3): 5}
    assert ideal_valuation(ReesElement.zero(p8, 3)).to_json() == ">=3"
    with pytest.raises(PrecisionError):
        ideal_valuation(ReesElement.zero(p8, 3)).at_least(4)


def test_modulus_mode_caps_precision():
    params = RingParams(8, CoeffMode.modulus(5))
    assert ReesElement.unit(params).precision == 5
    assert ReesElement.unit(params, 3).precision == 3


def test_congruence_mod_ideal(p8):
    # f(1)^2 = f(2) exactly; f(2)^2 = f(4) mod I
    assert congruent_mod_ideal(eval_expression(F(1) ** 2, p8), ReesElement.f(p8, 2), 10)
    assert congruent_mod_ideal(eval_expression(F(2) ** 2, p8), ReesElement.f(p8, 4), 1)


def test_graded_component(p8):
    x = ReesElement.f(p8, 2) + mul_t(ReesElement.f(p8, 4))
    assert graded_component(x, 3) == mul_t(ReesElement.f(p8, 4))
    assert not graded_component(x, 1)


def test_decomposition_and_recombination(p8):
    x = (
        ReesElement.f(p8, 3) * 4
        + mul_t(ReesElement.f(p8, 4)) * 2
        + mul_t(ReesElement.f(p8, 5), 2)
    )
    buckets = canonical_ideal_decomposition(x, 2)
    assert [q for q, _ in buckets] == [0, 1, 2]
    assert buckets[0][1] == ReesElement.f(p8, 3)
    assert buckets[1][1] == ReesElement.f(p8, 4)
    assert buckets[2][1] == ReesElement.f(p8, 5)
    assert recombine(buckets, 2) == x
    assert recombine(buckets[1:], 2) == x - ReesElement.f(p8, 3) * 4

    with pytest.raises(ValuationTooSmallError):
        canonical_ideal_decomposition(x, 3)
    with pytest.raises(MalformedInputError):
        canonical_ideal_decomposition(x + ReesElement.f(p8, 1) * 4, 2)
    with pytest.raises(MalformedInputError):
        recombine([], 2)


def test_decomposition_deep_bucket(p8):
    x = mul_t(ReesElement.f(p8, 4), 3) * 4
    buckets = canonical_ideal_decomposition(x, 4, 2)
    assert len(buckets) == 3
    assert buckets[2][1] == mul_t(ReesElement.f(p8, 4)) * 1
    assert recombine(buckets, 4) == x
    with pytest.raises(ValuationTooSmallError):
        canonical_ideal_decomposition(mul_t(ReesElement.f(p8, 4), 3) * 2, 4, 2)


def test_decomposition_carries_precision(p8):
    x = ReesElement(p8, {((3,), 3): 4, ((4,), 3): 2}, precision=5)
    buckets = canonical_ideal_decomposition(x, 2)
    assert [y.precision for _, y in buckets] == [3, 3, 3]
    assert recombine(buckets, 2) == x


def test_point_line_basis(p4):
    l = p4.dim_x - 3
    x = line_class(p4, l) * 3 + point_class(p4, l) * -5
    coords = express_in_point_line_basis(x, l)
    assert (coords.line, coords.point) == (3, -5)
    assert not coords.remainder

    with pytest.raises(InconsistencyError):
        express_in_point_line_basis(ReesElement.f(p4, 1), l)
    with pytest.raises(IndexRangeError):
        line_class(p4, p4.dim_x)
    with pytest.raises(IndexRangeError):
        point_class(p4, p4.dim_x + 1)


def test_point_and_line_classes_are_schubert(p4):
    assert point_class(p4, p4.dim_x) == ReesElement.schubert(p4, (4, 3, 2, 1))
    assert line_class(p4, p4.dim_x - 1) == ReesElement.schubert(p4, (4, 3, 2))
    assert point_class(p4, p4.dim_x - 2) == mul_t(ReesElement.schubert(p4, (4, 3, 2, 1)), 2)


def test_text_and_json_forms(p8):
    x = eval_expression(F(3) * G(2) - T * F(5), p8)
    assert ReesElement.from_text(p8, x.to_text()) == x
    assert ReesElement.from_json(p8, x.to_json()) == x
    assert ReesElement.from_text(p8, "0") == ReesElement.zero(p8)
    with pytest.raises(MalformedInputError):
        ReesElement.from_text(p8, "3*E[2]")


def test_params_mismatch(p8, p4):
    with pytest.raises(ParamsMismatchError):
        ReesElement.f(p8, 1) + ReesElement.f(p4, 1)


def test_eval_expression_side(p8):
    with pytest.raises(ExpressionTypeError):
        eval_expression(F(1) * E1, p8)
    start = ReesElement.f(p8, 2)
    assert eval_expression(F(1), p8, start=start) == pieri_mul(1, start)


def test_psi_substitute(p8):
    assert evaluate(psi_substitute(G(3) + T * F(2) + Int(5)), p8) == ChowElement(
        p8, {(3,): 2, (): 5}
    )
    assert str(psi_substitute(F(1) * G(2))) == "e(1)*2*e(2)"


@pytest.mark.parametrize("i", range(2, 8))
def test_psi_of_square_form(p8, i):
    lhs = evaluate(psi_substitute(F(i) * F(i)), p8)
    rhs = evaluate(psi_substitute(square_product_form(i)), p8)
    assert two_adic_valuation(lhs - rhs).at_least(2)
