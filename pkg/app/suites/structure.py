# app/suites/structure.py
"""Cocycle identities, oracle faithfulness and grading compatibility of both operator algebras."""
import random
from typing import List, Tuple

from app.core.derops import DerOp, one_sided_cocycle, w_bracket, w_cocycle, w_filt_degree, w_product, w_q_degree
from app.core.derops import w_compose_matches
from app.core.diffops import (
    DiffOp,
    d_bracket,
    d_cocycle1,
    d_cocycle2,
    d_compose_matches,
    d_degree,
    d_product,
    d_traceless,
    untwisted_cocycle1,
)
from app.schemas import Report, SuiteConfig
from app.suites.runner import Suite, SuiteContext, residual, scalar_residual

suite = Suite("structure", window_key="K", mutations=("cocycle1-untwisted", "bkly-one-sided"))

TRIPLES = 200
PAIRS = 200
ORACLE_PAIRS = 100
ORACLE_EXPONENTS = range(-8, 9)


# =========================================================
# SAMPLERS
# =========================================================
def _rng(ctx: SuiteContext, tag: str) -> random.Random:
    return random.Random(f"structure:{tag}:{ctx.n}:{ctx.window}:{ctx.cfg.seed or 0}")


def _units(rng: random.Random, n: int) -> Tuple[Tuple[int, int], ...]:
    """Three matrix units whose product around the cycle is nonzero."""
    a, b, c = (rng.randint(1, n) for _ in range(3))
    return (a, b), (b, c), (c, a)


def _exponent_triples(rng: random.Random, reach: int, low: int) -> List[Tuple[int, int]]:
    """Three (left, right) exponent pairs; half the time the right exponents sum to zero."""
    pairs = [(rng.randint(low, reach), rng.randint(-reach, reach)) for _ in range(2)]
    if rng.random() < 0.5:
        last = -(pairs[0][1] + pairs[1][1])
        if low < 0:
            pairs.append((-(pairs[0][0] + pairs[1][0]), last))
        else:
            pairs.append((rng.randint(low, reach), last))
    else:
        pairs.append((rng.randint(low, reach), rng.randint(-reach, reach)))
    return pairs


def _triples(ctx: SuiteContext, cls, low: int, count: int):
    n, p = ctx.n, ctx.params
    rng = _rng(ctx, cls.__name__)
    reach = max(ctx.window, 1)
    out = []
    for _ in range(count):
        units = _units(rng, n)
        exps = _exponent_triples(rng, reach, low)
        out.append(tuple(cls.monomial(n, i, j, a, l, params=p) for (i, j), (a, l) in zip(units, exps)))
    return out


def _difference_witnesses(ctx: SuiteContext):
    n, p = ctx.n, ctx.params
    mono = DiffOp.monomial
    return [
        (mono(n, 1, 1, 1, 1, params=p), mono(n, 1, 1, -1, 0, params=p), mono(n, 1, 1, 0, -1, params=p)),
        (mono(n, 1, n, 1, 1, params=p), mono(n, n, 1, 0, -1, params=p), mono(n, 1, 1, -1, 0, params=p)),
    ]


def _differential_witnesses(ctx: SuiteContext):
    n, p = ctx.n, ctx.params
    mono = DerOp.monomial
    return [
        (mono(n, 1, 1, 0, 1, params=p), mono(n, 1, 1, 0, -1, params=p), mono(n, 1, 1, 1, 0, params=p)),
        (mono(n, 1, n, 2, 1, params=p), mono(n, n, 1, 1, -1, params=p), mono(n, 1, 1, 1, 0, params=p)),
    ]


# =========================================================
# DIFFERENCE SIDE
# =========================================================
def _difference_cocycles(ctx: SuiteContext):
    if ctx.mutation == "cocycle1-untwisted":
        return (untwisted_cocycle1, d_cocycle2)
    return (d_cocycle1, d_cocycle2)


def _differential_cocycle(ctx: SuiteContext):
    return one_sided_cocycle if ctx.mutation == "bkly-one-sided" else w_cocycle


def _jacobi(bracket, x, y, z):
    total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    return residual(total)


@suite.checks
def difference_side(ctx: SuiteContext):
    cocycles = _difference_cocycles(ctx)

    def bracket(x, y):
        return d_bracket(x, y, cocycles)

    triples = _difference_witnesses(ctx) + _triples(ctx, DiffOp, -max(ctx.window, 1), TRIPLES)
    for t, (x, y, z) in enumerate(triples):
        yield ctx.check("jacobi-difference", dict(triple=t), _jacobi, bracket, x, y, z)
        yield ctx.check(
            "associativity-difference", dict(triple=t),
            lambda x=x, y=y, z=z: residual(d_product(d_product(x, y), z) - d_product(x, d_product(y, z))),
        )
    for t, (x, y, _) in enumerate(triples[:PAIRS]):
        for e, phi in enumerate(cocycles, start=1):
            yield ctx.check(
                f"antisymmetry-difference-{e}", dict(pair=t),
                lambda x=x, y=y, phi=phi: scalar_residual(phi(x, y) + phi(y, x)),
            )
        yield ctx.check("degree-difference", dict(pair=t), _degree_additive, x, y)
        yield ctx.check("closure-difference", dict(pair=t), _closure, x, y, bracket)
    for t, (x, y, z) in enumerate(triples[:ORACLE_PAIRS]):
        yield ctx.check(
            "oracle-difference", dict(pair=t),
            lambda x=x, y=y, z=z: None if d_compose_matches(x + z, y, ORACLE_EXPONENTS) else "composition mismatch",
        )


def _degree_additive(x: DiffOp, y: DiffOp):
    xy = d_product(x, y)
    if xy.is_zero():
        return None
    got, want = d_degree(xy), d_degree(x) + d_degree(y)
    return None if got == want else f"degree {got} != {want}"


def _traceless_part(x: DiffOp) -> DiffOp:
    """x with its D^0 Z^0 diagonal projected to trace zero."""
    if d_traceless(x):
        return x
    n = x.n
    shift = x.trace_at(0, 0) / n
    return x - DiffOp(n, {(m, m, 0, 0): shift for m in range(1, n + 1)}, params=x.params)


def _closure(x: DiffOp, y: DiffOp, bracket):
    value = bracket(_traceless_part(x), _traceless_part(y))
    return None if d_traceless(value) else f"bracket leaves the traceless subalgebra: {value.render()}"


# =========================================================
# DIFFERENTIAL SIDE
# =========================================================
@suite.checks
def differential_side(ctx: SuiteContext):
    cocycle = _differential_cocycle(ctx)

    def bracket(x, y):
        return w_bracket(x, y, cocycle)

    triples = _differential_witnesses(ctx) + _triples(ctx, DerOp, 0, TRIPLES)
    for t, (x, y, z) in enumerate(triples):
        yield ctx.check("jacobi-differential", dict(triple=t), _jacobi, bracket, x, y, z)
        yield ctx.check(
            "associativity-differential", dict(triple=t),
            lambda x=x, y=y, z=z: residual(w_product(w_product(x, y), z) - w_product(x, w_product(y, z))),
        )
    for t, (x, y, _) in enumerate(triples[:PAIRS]):
        yield ctx.check(
            "antisymmetry-differential", dict(pair=t),
            lambda x=x, y=y: scalar_residual(cocycle(x, y) + cocycle(y, x)),
        )
        yield ctx.check("filtration-differential", dict(pair=t), _filtration_compatible, x, y, bracket)
    for t, (x, y, z) in enumerate(triples[:ORACLE_PAIRS]):
        yield ctx.check(
            "oracle-differential", dict(pair=t),
            lambda x=x, y=y, z=z: None if w_compose_matches(x + z, y, ORACLE_EXPONENTS) else "composition mismatch",
        )


def _filtration_compatible(x: DerOp, y: DerOp, bracket):
    xy = w_product(x, y)
    if not xy.is_zero():
        got = w_q_degree(xy)
        want = tuple(a + b for a, b in zip(w_q_degree(x), w_q_degree(y)))
        if got != want:
            return f"Q-degree {got} != {want}"
    value = bracket(x, y).without_central()
    if value.is_zero():
        return None
    level = w_filt_degree(value).k
    bound = w_filt_degree(x).k + w_filt_degree(y).k
    return None if level <= bound else f"filtration {level} exceeds {bound}"


def verify_structure(cfg: SuiteConfig) -> Report:
    return suite.run(cfg)
