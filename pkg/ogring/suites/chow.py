"""Congruences modulo powers of 2 in the Chow ring of a theorem rank."""
import functools as fnt
import itertools
import logging
import math

from ogring.chow_ring import ChowElement, coefficient, normalize, two_adic_valuation
from ogring.expression import E1, Ci, Ei, Int, e_set, total
from ogring.families import interval
from ogring.params import CoeffMode
from ogring.steenrod_restriction import res, shat, shat_set, torsion_index
from ogring.suites.rees import _starred_instances
from ogring.suites.runner import (
    CheckSpec,
    chow_at_least,
    chow_congruence,
    skipped,
    verdict,
)
from ogring.valuation import is_two_power, v2, v2_factorial

NAME = "chow"
THEOREM_RANK_ONLY = True

STATEMENTS = {
    "chow.power-structure": (
        "e(i)^j = 2^v(j!) sum e(J) mod 2^(v(j!)+1) for i in I0, j >= 2, every J meeting "
        "[i+1, n]; for i in I2 also J inside I1 + I2 or meeting I3bar"
    ),
    "chow.e1-power": (
        "e(1)^(nj) = 0 mod 2^(j+v(j!)-1) and e(1)^(nj) = -j 2^(j-1) "
        "(sum_(i in I0) e(i) e(n-i))^(j-1) e(n) mod 2^(j+v(j!))"
    ),
    "chow.e1-power-bounds": (
        "v(e(1)^(n^2/4)) >= n/2-2 and v(e(1)^(n^2/4-n)) >= n/2-1-v(n)"
    ),
    "chow.e1-upper-block": (
        "e(1)^(n^2/4-n) e(I3) e(n/2) = 0 mod 2^(n/2-v(n)-1) and "
        "= -(n/4-1)! 2^(n/4-2) e([n/4+2, n]) mod 2^(n/2-v(n))"
    ),
    "chow.e1-steenrod-upper-block": (
        "e(1)^(n^2/4-n) res(S(I3)) = 0 mod 2^(3n/4-v(n)) and, times e(n/2), "
        "= 2^(3n/4-v(n)) e([n/4+2, n]) mod 2^(3n/4-v(n)+1)"
    ),
    "chow.multiset-vanishing": (
        "e(J) = 0 mod 2 when J repeats some k and contains every j in (k, n] once"
    ),
    "chow.shat-examples": "S(n) = c(n); at n = 8: S(7) = c(7) + 6c(8), S(6) = c(6) + 5c(7) + 10c(8)",
    "chow.shat23": "res(S({2,3})) = 4 (e(2) + e(3)) (e(3) + 2e(4) + e(5))",
    "chow.theorem": "e(1)^(n^2/4-1) res(S(J)) = ind X e([1,n]) mod 2 ind X",
    "chow.n8-intermediate": "at n = 8: e(1)^8 res(S([6,7])) = 4 e([6,8]) mod 8",
    "chow.steenrod-scope": (
        "e(1)^(n^2/4) res(S(J)) = 0 mod 2 ind X and the quadratic Steenrod terms are "
        "divisible by 2 ind X after multiplication by e(1)^(n^2/4-1)"
    ),
    "chow.two-power-e1": "e(1)^m = e(m) mod 2 for every power of 2 m <= n",
}

logger = logging.getLogger(__name__)


def theorem_chow_expression(families):
    """e^(n^2/4-1) S(J) on the non-split variety."""
    return E1 ** families.e_power * shat_set(families.j, families.n)


def _res(ctx, expr):
    return ctx.memo(("res", expr), lambda: res(expr, ctx.params))


def _meets(monomial, indices):
    return not set(monomial).isdisjoint(indices)


def check_power_structure(ctx, i, j):
    fam = ctx.families
    n = ctx.n
    bound = v2_factorial(j)
    x = ctx.chow(Ei(i) ** j)
    ok, witness = chow_at_least(x, bound)
    upper = interval(i + 1, n)
    lower_blocks = set(fam.i1 + fam.i2)
    stray = []
    for mono, c in x.terms.items():
        if v2(c) > bound:
            continue
        if not _meets(mono, upper):
            stray.append(list(mono))
        elif i in fam.i2 and not (set(mono) <= lower_blocks or _meets(mono, fam.i3bar)):
            stray.append(list(mono))
    witness.update(i=i, j=j, stray=stray[:10])
    return verdict(ok and not stray, witness)


def check_e1_power(ctx, j):
    fam = ctx.families
    n = ctx.n
    low = j + v2_factorial(j) - 1
    x = ctx.chow(E1 ** (n * j))
    pairs = total(Ei(i) * Ei(n - i) for i in fam.i0)
    rhs = ctx.chow(Int(-j * 2 ** (j - 1)) * pairs ** (j - 1) * Ei(n))
    ok_zero, zero = chow_at_least(x, low)
    ok_congruence, congruence = chow_congruence(x, rhs, low + 1)
    return verdict(
        ok_zero and ok_congruence, {"j": j, "vanishing": zero, "congruence": congruence}
    )


def check_e1_power_bounds(ctx):
    n = ctx.n
    v = ctx.params.v_n
    full = n * n // 4
    ok_full, at_full = chow_at_least(ctx.chow(E1 ** full), n // 2 - 2)
    ok_less, at_less = chow_at_least(ctx.chow(E1 ** (full - n)), n // 2 - 1 - v)
    return verdict(ok_full and ok_less, {"n^2/4": at_full, "n^2/4-n": at_less})


def check_e1_upper_block(ctx):
    fam = ctx.families
    n = ctx.n
    v = ctx.params.v_n
    N = n // 2 - v
    x = ctx.chow(E1 ** (n * n // 4 - n) * e_set(fam.i3) * Ei(n // 2))
    coef = -math.factorial(n // 4 - 1) * 2 ** (n // 4 - 2)
    rhs = ChowElement.monomial(ctx.params, interval(n // 4 + 2, n)) * coef
    ok_zero, zero = chow_at_least(x, N - 1)
    ok_congruence, congruence = chow_congruence(x, rhs, N)
    return verdict(ok_zero and ok_congruence, {"vanishing": zero, "congruence": congruence})


def check_e1_steenrod_upper_block(ctx):
    fam = ctx.families
    n = ctx.n
    v = ctx.params.v_n
    N = 3 * n // 4 - v
    base = E1 ** (n * n // 4 - n) * shat_set(fam.i3, n)
    ok_zero, zero = chow_at_least(_res(ctx, base), N)
    x = _res(ctx, base * Ei(n // 2))
    rhs = ChowElement.monomial(ctx.params, interval(n // 4 + 2, n)) * 2 ** N
    ok_congruence, congruence = chow_congruence(x, rhs, N + 1)
    return verdict(ok_zero and ok_congruence, {"vanishing": zero, "congruence": congruence})


def check_multiset_vanishing(ctx):
    instances, mode = _starred_instances(ctx, NAME + ".multiset-vanishing")
    mod_two = ctx.params.with_coeff(CoeffMode.modulus(1))
    failures = [
        list(multiset)
        for multiset in instances
        if normalize({multiset: 1}, mod_two)
    ]
    return verdict(
        not failures,
        {"mode": mode, "instances": len(instances), "failures": failures[:10]},
    )


def check_shat_examples(ctx):
    n = ctx.n
    cases = [(n, total([Int(1) * Ci(n)]))]
    if n == 8:
        cases.append((7, total([Int(1) * Ci(7), Int(6) * Ci(8)])))
        cases.append((6, total([Int(1) * Ci(6), Int(5) * Ci(7), Int(10) * Ci(8)])))
    found = {}
    ok = True
    for i, expected in cases:
        got = shat(i, n)
        found[f"S({i})"] = str(got)
        ok = ok and got == expected
    return verdict(ok, found)


def check_shat23(ctx):
    params = ctx.params
    got = res(shat_set((2, 3), ctx.n), params)
    expected = ctx.chow(Int(4) * (Ei(2) + Ei(3)) * (Ei(3) + Int(2) * Ei(4) + Ei(5)))
    diff = got - expected
    return verdict(not diff, {"difference": diff.to_text()})


def check_theorem(ctx):
    params = ctx.params
    ind = torsion_index(ctx.n)
    x = _res(ctx, theorem_chow_expression(ctx.families))
    point = ChowElement.point(params) * ind
    ok, witness = chow_congruence(x, point, params.m + 1)
    witness["point_coefficient"] = str(coefficient(x, range(1, ctx.n + 1)))
    return verdict(ok, witness)


def check_n8_intermediate(ctx):
    if ctx.n != 8:
        return skipped("only stated for n = 8")
    x = _res(ctx, E1 ** 8 * shat_set((6, 7), 8))
    rhs = ChowElement.monomial(ctx.params, (6, 7, 8)) * 4
    return verdict(*chow_congruence(x, rhs, 3))


def check_steenrod_scope(ctx):
    fam = ctx.families
    params = ctx.params
    n, m = ctx.n, params.m
    x = _res(ctx, E1 ** (n * n // 4) * shat_set(fam.j, n))
    ok_vanish, vanish = chow_at_least(x, m + 1)
    # each quadratic term adds one factor 2 beyond the |J| from the restriction
    e_less = two_adic_valuation(ctx.chow(E1 ** (n * n // 4 - n)))
    quadratic_bound = e_less + (len(fam.j) + 1)
    ok_bound = quadratic_bound.at_least(m + 1)
    return verdict(
        ok_vanish and ok_bound,
        {
            "vanishing": vanish,
            "v2(e^(n^2/4-n)) + |J| + 1": quadratic_bound.to_json(),
            "N": m + 1,
        },
    )


def check_two_power_e1(ctx):
    powers = [m for m in range(1, ctx.n + 1) if is_two_power(m)]
    witness = {}
    ok = True
    for m in powers:
        congruent, detail = chow_congruence(ctx.chow(E1 ** m), ctx.chow(Ei(m)), 1)
        witness[str(m)] = detail
        ok = ok and congruent
    return verdict(ok, witness)


def checks(ctx):
    fam = ctx.families
    n = ctx.n
    for i, j in itertools.product(fam.i0, range(2, ctx.max_power + 1)):
        yield CheckSpec(
            f"chow.power-structure.i{i}.j{j}",
            "chow.power-structure",
            fnt.partial(check_power_structure, i=i, j=j),
        )
    for j in range(2, min(n // 4, ctx.max_power) + 1):
        yield CheckSpec(
            f"chow.e1-power.j{j}", "chow.e1-power", fnt.partial(check_e1_power, j=j)
        )
    yield CheckSpec("chow.e1-power-bounds", "chow.e1-power-bounds", check_e1_power_bounds)
    yield CheckSpec("chow.e1-upper-block", "chow.e1-upper-block", check_e1_upper_block)
    yield CheckSpec(
        "chow.e1-steenrod-upper-block",
        "chow.e1-steenrod-upper-block",
        check_e1_steenrod_upper_block,
    )
    yield CheckSpec(
        "chow.multiset-vanishing", "chow.multiset-vanishing", check_multiset_vanishing
    )
    yield CheckSpec("chow.shat-examples", "chow.shat-examples", check_shat_examples)
    yield CheckSpec("chow.shat23", "chow.shat23", check_shat23)
    yield CheckSpec("chow.theorem", "chow.theorem", check_theorem)
    yield CheckSpec("chow.n8-intermediate", "chow.n8-intermediate", check_n8_intermediate)
    yield CheckSpec("chow.steenrod-scope", "chow.steenrod-scope", check_steenrod_scope)
    yield CheckSpec("chow.two-power-e1", "chow.two-power-e1", check_two_power_e1)
