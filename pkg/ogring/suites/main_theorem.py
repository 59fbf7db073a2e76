"""The main theorem: the Rees-ring chain for y = f(1)^(n^2/4-1) g(J) and its
Chow-ring shadow.

In grade D - 3 (D = dim X) the element y is pushed through the ideal
decomposition at N = m + 1. Buckets 0 and 1 land in I(X) structurally; the
rest is a combination of the line and point classes, which the companion
z = f(1)^(n^2/4-2) g(J') matches term by term. The leftover lies in
I^(m+3), and I^(m+3) meets grade D - 3 inside I(X).
"""
import logging

from ogring.chow_ring import ChowElement, degree_top
from ogring.error import NotDivisibleError
from ogring.expression import E1
from ogring.grothendieck_rees import (
    canonical_ideal_decomposition,
    express_in_point_line_basis,
    ideal_valuation,
    line_class,
    mul_t,
    pieri_mul,
    point_class,
    recombine,
)
from ogring.steenrod_restriction import (
    deg_over_index,
    res,
    shat_set,
    torsion_index,
    total_steenrod_e,
)
from ogring.suites.rees import companion_element, theorem_element
from ogring.suites.runner import (
    CheckSpec,
    assumed,
    chow_congruence,
    k_at_least,
    k_congruence,
    verdict,
)

NAME = "main_theorem"
THEOREM_RANK_ONLY = True

STATEMENTS = {
    "mt.index-families": (
        "|J| = n/2 - v(n) + 3, n^2/4 - 1 + sum(J) = dim X - 3 and ind X = 2^(n-2v(n)+2)"
    ),
    "mt.y-membership": "y = f(1)^(n^2/4-1) g(J) lies in I^(m+1)",
    "mt.decomposition": "y = sum_(q=0..3) 2^(m+1-q) t^q y_q",
    "mt.low-buckets": "2^(m+1) y_0 + 2^m t y_1 lies in I(X)",
    "mt.point-line-coordinates": (
        "y' = 2^(m-1) t^2 y_2 + 2^(m-2) t^3 y_3 = 2^(m-1) a l + 2^(m-2) b p in grade dim X - 3"
    ),
    "mt.z-line": "2z = 2^(m-1) l mod I^(m+2), z = f(1)^(n^2/4-2) g(J')",
    "mt.z-point": "t f(1) z = 2^(m-2) p mod I^(m+2)",
    "mt.line-point-structural": "2^(m-1) l and 2^(m-2) p lie in I(X) in grade dim X - 3",
    "mt.first-reduction": "y' - 2a z - b t f(1) z lies in I^(m+2)",
    "mt.second-reduction": (
        "2 t f(1) z = 2^(m-1) p mod I^(m+3) and y'' - 2b' t f(1) z lies in I^(m+3)"
    ),
    "mt.deep-structural": "I^(m+3) meets grade dim X - 3 inside I(X)",
    "mt.chow-degree": (
        "A = e^(n^2/4-1) res(S(J)): deg(A)/ind X = 1 mod 2 and deg(A) != 0 mod 2 ind X"
    ),
    "mt.chow-total-steenrod": (
        "res(S^tot(e^(n^2/4-1)) S(J)) = ind X e([1,n]) mod 2 ind X"
    ),
}

logger = logging.getLogger(__name__)


def _grade(ctx):
    return ctx.params.dim_x - 3


def _y(ctx):
    return ctx.rees(theorem_element(ctx.families), ctx.theorem_precision)


def _z(ctx):
    return ctx.rees(companion_element(ctx.families), ctx.theorem_precision)


def _tfz(ctx):
    return ctx.memo(("tfz",), lambda: mul_t(pieri_mul(1, _z(ctx))))


def _buckets(ctx):
    m = ctx.params.m
    return ctx.memo(
        ("y-buckets",), lambda: canonical_ideal_decomposition(_y(ctx), m + 1, 3)
    )


def _y_prime(ctx):
    m = ctx.params.m
    return ctx.memo(("y'",), lambda: recombine(_buckets(ctx)[2:], m + 1))


def _exact_quotient(value, divisor, what):
    quotient, rest = divmod(value, divisor)
    if rest:
        raise NotDivisibleError(f"{what} = {value} is not divisible by {divisor}")
    return quotient


def point_line_coordinates(ctx):
    """(a, b) with y' = 2^(m-1) a l + 2^(m-2) b p."""

    def compute():
        m = ctx.params.m
        coords = express_in_point_line_basis(_y_prime(ctx), _grade(ctx))
        a = _exact_quotient(coords.line, 1 << (m - 1), "line coordinate")
        b = _exact_quotient(coords.point, 1 << (m - 2), "point coordinate")
        logger.debug("y' coordinates: line %d, point %d", coords.line, coords.point)
        return a, b

    return ctx.memo(("y'-coordinates",), compute)


def first_difference(ctx):
    def compute():
        a, b = point_line_coordinates(ctx)
        return _y_prime(ctx) - _z(ctx) * (2 * a) - _tfz(ctx) * b

    return ctx.memo(("delta",), compute)


def check_index_families(ctx):
    fam = ctx.families
    params = ctx.params
    size_ok = len(fam.j) == fam.expected_j_size
    degree = fam.e_power + sum(fam.j)
    degree_ok = degree == _grade(ctx)
    index_ok = torsion_index(ctx.n) == params.ind_x
    return verdict(
        size_ok and degree_ok and index_ok,
        {
            "families": fam.as_dict(),
            "|J|": len(fam.j),
            "expected |J|": fam.expected_j_size,
            "degree": degree,
            "ind_x": params.ind_x,
        },
    )


def check_y_membership(ctx):
    return verdict(*k_at_least(_y(ctx), ctx.params.m + 1))


def check_decomposition(ctx):
    m = ctx.params.m
    y = _y(ctx)
    buckets = _buckets(ctx)
    rebuilt = recombine(buckets, m + 1)
    return verdict(
        len(buckets) == 4 and rebuilt == y,
        {
            "N": m + 1,
            "buckets": {str(q): len(part) for q, part in buckets},
            "terms": len(y),
        },
    )


def check_low_buckets(ctx):
    buckets = _buckets(ctx)
    return assumed(
        "I^(m+1) meets the first two buckets inside I(X)",
        sizes={str(q): len(part) for q, part in buckets[:2]},
    )


def check_point_line_coordinates(ctx):
    params = ctx.params
    m = params.m
    l = _grade(ctx)
    a, b = point_line_coordinates(ctx)
    line = line_class(params, l) * ((1 << (m - 1)) * a)
    point = point_class(params, l) * ((1 << (m - 2)) * b)
    remainder = _y_prime(ctx) - line - point
    return verdict(
        not remainder, {"a": a, "b": b, "grade": l, "remainder": remainder.to_text()}
    )


def check_z_line(ctx):
    params = ctx.params
    m = params.m
    rhs = line_class(params, _grade(ctx)) * (1 << (m - 1))
    return verdict(*k_congruence(_z(ctx) * 2, rhs, m + 2))


def check_z_point(ctx):
    params = ctx.params
    m = params.m
    rhs = point_class(params, _grade(ctx)) * (1 << (m - 2))
    return verdict(*k_congruence(_tfz(ctx), rhs, m + 2))


def check_line_point_structural(ctx):
    return assumed(
        "2^(m-1) l and 2^(m-2) p are classes of X in grade dim X - 3",
        grade=_grade(ctx),
    )


def check_first_reduction(ctx):
    return verdict(*k_at_least(first_difference(ctx), ctx.params.m + 2))


def check_second_reduction(ctx):
    params = ctx.params
    m = params.m
    grade = _grade(ctx)
    tfz = _tfz(ctx)
    ok_point, point = k_congruence(
        tfz * 2, point_class(params, grade) * (1 << (m - 1)), m + 3
    )
    deep = canonical_ideal_decomposition(first_difference(ctx), m + 2, 3)[3]
    y2 = recombine([deep], m + 2)
    coords = express_in_point_line_basis(y2, grade)
    b2 = _exact_quotient(coords.point, 1 << (m - 1), "second point coordinate")
    ok_rest, rest = k_at_least(y2 - tfz * (2 * b2), m + 3)
    return verdict(
        ok_point and ok_rest, {"b'": b2, "point": point, "remainder": rest}
    )


def check_deep_structural(ctx):
    m = ctx.params.m
    return assumed(
        "I^(m+3) meets grade dim X - 3 inside I(X)",
        N=m + 3,
        grade=_grade(ctx),
        v_K_y=ideal_valuation(_y(ctx)).to_json(),
    )


def _chow_theorem_element(ctx):
    fam = ctx.families
    expr = E1 ** fam.e_power * shat_set(fam.j, ctx.n)
    return ctx.memo(("res", expr), lambda: res(expr, ctx.params))


def check_chow_degree(ctx):
    a = _chow_theorem_element(ctx)
    ind = torsion_index(ctx.n)
    top = degree_top(a)
    parity = deg_over_index(a)
    return verdict(
        parity == 1 and top % (2 * ind) != 0,
        {"deg": str(top), "deg/ind": parity, "ind_x": ind},
    )


def check_chow_total_steenrod(ctx):
    fam = ctx.families
    params = ctx.params
    ind = torsion_index(ctx.n)
    x = res(total_steenrod_e(fam.e_power) * shat_set(fam.j, ctx.n), params)
    return verdict(
        *chow_congruence(x, ChowElement.point(params) * ind, params.m + 1)
    )


def checks(ctx):
    yield CheckSpec("mt.index-families", "mt.index-families", check_index_families)
    yield CheckSpec("mt.y-membership", "mt.y-membership", check_y_membership)
    yield CheckSpec("mt.decomposition", "mt.decomposition", check_decomposition)
    yield CheckSpec("mt.low-buckets", "mt.low-buckets", check_low_buckets)
    yield CheckSpec(
        "mt.point-line-coordinates",
        "mt.point-line-coordinates",
        check_point_line_coordinates,
    )
    yield CheckSpec("mt.z-line", "mt.z-line", check_z_line)
    yield CheckSpec("mt.z-point", "mt.z-point", check_z_point)
    yield CheckSpec(
        "mt.line-point-structural",
        "mt.line-point-structural",
        check_line_point_structural,
    )
    yield CheckSpec("mt.first-reduction", "mt.first-reduction", check_first_reduction)
    yield CheckSpec("mt.second-reduction", "mt.second-reduction", check_second_reduction)
    yield CheckSpec("mt.deep-structural", "mt.deep-structural", check_deep_structural)
    yield CheckSpec("mt.chow-degree", "mt.chow-degree", check_chow_degree)
    yield CheckSpec(
        "mt.chow-total-steenrod", "mt.chow-total-steenrod", check_chow_total_steenrod
    )
