"""Configuration groups of the engine and of the verification harness."""
from ogring.conf import Conf, prop
from ogring.params import CoeffMode

conf = Conf()

with conf.declare_group("engine") as engine:
    engine.coeff = prop(
        default=CoeffMode.exact(),
        desc="coefficients: exact, mod (2^(m+3)) or mod:<K>",
    )
    engine.debug_rewrites = prop(
        default=False,
        desc="assert that every Chow rewrite step increases the monomial",
    )

with conf.declare_group("verify") as verify:
    verify.threads = prop(
        default=1,
        desc="worker threads for independent checks",
        envvar="OGRING_THREADS",
    )
    verify.seed = prop(default=20240229, desc="seed of every sampled check")
    verify.samples = prop(
        default=500,
        desc="random instances per sampled check",
    )
    verify.max_power = prop(
        default=4,
        desc="largest exponent in the power-structure checks",
    )
