"""Congruences modulo powers of I = (2, t) in the Rees ring of a theorem rank."""
import functools as fnt
import itertools
import logging
import math

from ogring.expression import F, G, Int, f_set, g_set, total
from ogring.families import interval
from ogring.grothendieck_rees import eval_expression, ideal_valuation, line_class
from ogring.suites.runner import CheckSpec, k_at_least, k_congruence, skipped, verdict
from ogring.valuation import v2_factorial

NAME = "rees"
THEOREM_RANK_ONLY = True

STATEMENTS = {
    "k.power-structure": "v_K(f(i)^j) >= v(j!) for i in I0, j >= 2",
    "k.power-structure-upper": (
        "f(i)^j g(n-i)^j f(I3bar) lies in I^(v(j!)+j+1) for i in I1 and in "
        "I^(v(j!)+j) for i in I2"
    ),
    "k.e1-power": (
        "f(1)^(nj) lies in I^(j+v(j!)-1) and equals -j (sum_(i in I0) f(i) g(n-i))^(j-1) "
        "f(n) mod I^(j+v(j!))"
    ),
    "k.e1-power-bounds": (
        "v_K(f(1)^(n^2/4)) >= n/2-2 and v_K(f(1)^(n^2/4-n)) >= n/2-1-v(n)"
    ),
    "k.e1-upper-block": (
        "f(1)^(n^2/4-n) f(I3) f(n/2) lies in I^(n/2-v(n)-1) and equals "
        "-(n/4-1)! f([n/2,n]) g([n/4+2,n/2-1]) mod I^(n/2-v(n))"
    ),
    "k.e1-g-upper-block": (
        "f(1)^(n^2/4-n) g(I3) lies in I^(3n/4-v(n)); times f(n/2) it equals "
        "2^(n/2-v(n)+2) f([n/2,n]) g([n/4+2,n/2-1]) mod I^(3n/4-v(n)+1)"
    ),
    "k.multiset-vanishing": (
        "f(J) = 0 mod I when J repeats some k and contains every j in (k, n] once"
    ),
    "k.theorem-a": "f(1)^(n^2/4-1) g(J) = 0 mod I^(m+1), m = v(ind X)",
    "k.theorem-b": "f(1)^(n^2/4-2) g(J') = 2^(m-2) t^2 f([2,n]) mod I^(m+1)",
    "k.n8-intermediate": "at n = 8: f(1)^8 g([6,7]) = 4 f([6,8]) mod I^3",
    "k.g-lower-block": "v_K(g([n/4+2, n/2-1])) >= n/4-2",
}

logger = logging.getLogger(__name__)


def theorem_element(families):
    """y = f(1)^(n^2/4-1) g(J)."""
    return F(1) ** families.e_power * g_set(families.j)


def companion_element(families):
    """z = f(1)^(n^2/4-2) g(J')."""
    return F(1) ** (families.e_power - 1) * g_set(families.j_prime)


def upper_sum(families):
    """h = sum over i in I0 of f(i) g(n-i)."""
    n = families.n
    return total(F(i) * G(n - i) for i in families.i0)


def check_power_structure(ctx, i, j):
    bound = v2_factorial(j)
    x = ctx.rees_power(F(i), j, bound)
    ok, witness = k_at_least(x, bound)
    witness.update(i=i, j=j)
    return verdict(ok, witness)


def check_power_structure_upper(ctx, i, j):
    fam = ctx.families
    n = ctx.n
    bound = v2_factorial(j) + j + (1 if i in fam.i1 else 0)
    lower = ctx.rees_power(G(n - i), j, bound, tail=f_set(fam.i3bar))
    x = eval_expression(F(i) ** j, ctx.params, bound, start=lower)
    ok, witness = k_at_least(x, bound)
    witness.update(i=i, j=j, block="I1" if i in fam.i1 else "I2")
    return verdict(ok, witness)


def check_e1_power(ctx, j):
    fam = ctx.families
    n = ctx.n
    low = j + v2_factorial(j) - 1
    x = ctx.rees(F(1) ** (n * j), low + 1)
    rhs = ctx.rees(Int(-j) * upper_sum(fam) ** (j - 1) * F(n), low + 1)
    ok_membership, membership = k_at_least(x, low)
    ok_congruence, congruence = k_congruence(x, rhs, low + 1)
    return verdict(
        ok_membership and ok_congruence,
        {"j": j, "membership": membership, "congruence": congruence},
    )


def check_e1_power_bounds(ctx):
    n = ctx.n
    v = ctx.params.v_n
    full = n * n // 4
    ok_full, at_full = k_at_least(ctx.rees(F(1) ** full, n // 2 - 2), n // 2 - 2)
    ok_less, at_less = k_at_least(ctx.rees(F(1) ** (full - n), n // 2 - 1 - v), n // 2 - 1 - v)
    return verdict(ok_full and ok_less, {"n^2/4": at_full, "n^2/4-n": at_less})


def check_e1_upper_block(ctx):
    fam = ctx.families
    n = ctx.n
    v = ctx.params.v_n
    N = n // 2 - v
    expr = F(1) ** (n * n // 4 - n) * f_set(fam.i3) * F(n // 2)
    x = ctx.rees(expr, N)
    coefficient = -math.factorial(n // 4 - 1)
    rhs = ctx.rees(Int(coefficient) * f_set(fam.top_f) * g_set(fam.lower_g), N)
    ok_membership, membership = k_at_least(x, N - 1)
    ok_congruence, congruence = k_congruence(x, rhs, N)
    return verdict(
        ok_membership and ok_congruence,
        {"membership": membership, "congruence": congruence},
    )


def check_e1_g_upper_block(ctx):
    fam = ctx.families
    n = ctx.n
    v = ctx.params.v_n
    N = 3 * n // 4 - v
    base = F(1) ** (n * n // 4 - n) * g_set(fam.i3)
    ok_membership, membership = k_at_least(ctx.rees(base, N), N)
    x = ctx.rees(base * F(n // 2), N + 1)
    rhs = ctx.rees(
        Int(2 ** (n // 2 - v + 2)) * f_set(fam.top_f) * g_set(fam.lower_g), N + 1
    )
    ok_congruence, congruence = k_congruence(x, rhs, N + 1)
    return verdict(
        ok_membership and ok_congruence,
        {"membership": membership, "congruence": congruence},
    )


def starred_multisets(n, limit):
    """Every multiset J of [1, n] with sum(J) <= limit that repeats some k and
    contains each j in (k, n] exactly once, as sorted tuples."""
    seen = set()
    for k in range(1, n + 1):
        head = (k, k) + interval(k + 1, n)
        room = limit - sum(head)
        if room < 0:
            continue
        for extra in _bounded_multisets(k, room):
            multiset = tuple(sorted(head + extra))
            if multiset not in seen:
                seen.add(multiset)
                yield multiset


def _bounded_multisets(top, room):
    """Multisets of [1, top] with sum <= room."""
    if top == 0 or room <= 0:
        yield ()
        return
    for copies in range(room // top + 1):
        for rest in _bounded_multisets(top - 1, room - copies * top):
            yield rest + (top,) * copies


def random_starred_multisets(rng, n, count):
    for _ in range(count):
        k = rng.randint(1, n)
        extra = tuple(rng.randint(1, k) for _ in range(rng.randint(0, 3)))
        yield tuple(sorted((k, k) + interval(k + 1, n) + extra))


def _starred_instances(ctx, name):
    n = ctx.n
    if n == 8:
        return list(starred_multisets(n, ctx.params.dim_x)), "exhaustive"
    return list(random_starred_multisets(ctx.rng(name), n, ctx.samples)), "sampled"


def check_multiset_vanishing(ctx):
    instances, mode = _starred_instances(ctx, NAME + ".multiset-vanishing")
    params = ctx.params
    failures = []
    for multiset in instances:
        x = eval_expression(f_set(multiset), params, 1)
        if not ideal_valuation(x).at_least(1):
            failures.append(list(multiset))
    logger.debug("checked %d starred multisets at n=%d", len(instances), params.n)
    return verdict(
        not failures,
        {"mode": mode, "instances": len(instances), "failures": failures[:10]},
    )


def check_theorem_a(ctx):
    m = ctx.params.m
    y = ctx.rees(theorem_element(ctx.families), ctx.theorem_precision)
    return verdict(*k_at_least(y, m + 1))


def check_theorem_b(ctx):
    params = ctx.params
    m = params.m
    z = ctx.rees(companion_element(ctx.families), ctx.theorem_precision)
    rhs = line_class(params, params.dim_x - 3) * 2 ** (m - 2)
    return verdict(*k_congruence(z, rhs, m + 1))


def check_n8_intermediate(ctx):
    if ctx.n != 8:
        return skipped("only stated for n = 8")
    x = ctx.rees(F(1) ** 8 * g_set((6, 7)), 4)
    rhs = ctx.rees(Int(4) * f_set((6, 7, 8)), 4)
    return verdict(*k_congruence(x, rhs, 3))


def check_g_lower_block(ctx):
    lower = ctx.families.lower_g
    x = ctx.rees(g_set(lower), len(lower) + 1)
    ok, witness = k_at_least(x, len(lower))
    witness["block"] = list(lower)
    return verdict(ok, witness)


def checks(ctx):
    fam = ctx.families
    n = ctx.n
    powers = range(2, ctx.max_power + 1)
    for i, j in itertools.product(fam.i0, powers):
        yield CheckSpec(
            f"k.power-structure.i{i}.j{j}",
            "k.power-structure",
            fnt.partial(check_power_structure, i=i, j=j),
        )
    if not fam.i1 + fam.i2:
        yield CheckSpec(
            "k.power-structure-upper",
            "k.power-structure-upper",
            lambda ctx: skipped("I1 and I2 are empty at this rank"),
        )
    for i, j in itertools.product(fam.i1 + fam.i2, powers):
        yield CheckSpec(
            f"k.power-structure-upper.i{i}.j{j}",
            "k.power-structure-upper",
            fnt.partial(check_power_structure_upper, i=i, j=j),
        )
    for j in range(2, min(n // 4, ctx.max_power) + 1):
        yield CheckSpec(
            f"k.e1-power.j{j}", "k.e1-power", fnt.partial(check_e1_power, j=j)
        )
    yield CheckSpec("k.e1-power-bounds", "k.e1-power-bounds", check_e1_power_bounds)
    yield CheckSpec("k.e1-upper-block", "k.e1-upper-block", check_e1_upper_block)
    yield CheckSpec("k.e1-g-upper-block", "k.e1-g-upper-block", check_e1_g_upper_block)
    yield CheckSpec("k.multiset-vanishing", "k.multiset-vanishing", check_multiset_vanishing)
    yield CheckSpec("k.theorem-a", "k.theorem-a", check_theorem_a)
    yield CheckSpec("k.theorem-b", "k.theorem-b", check_theorem_b)
    yield CheckSpec("k.n8-intermediate", "k.n8-intermediate", check_n8_intermediate)
    yield CheckSpec("k.g-lower-block", "k.g-lower-block", check_g_lower_block)
