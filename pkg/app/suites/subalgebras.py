# app/suites/subalgebras.py
"""Vertical and horizontal subalgebras under theta and the vertical Heisenberg elements."""
from itertools import combinations

from app.core.diffops import DiffOp, d_bracket, identity_op
from app.core.morphisms import heisenberg_v, theta
from app.core.presentations import GenSym
from app.core.scalars import is_zero
from app.schemas import Report, SuiteConfig
from app.suites.runner import Suite, SuiteContext, difference, residual

suite = Suite("subalgebras", window_key="K")


# =========================================================
# MEMBERSHIP PREDICATES
# =========================================================
def _levels(x: DiffOp, axis: int):
    return sorted({key[axis] for key in x.terms})


def in_vertical(x: DiffOp) -> bool:
    """sl_n[D, D^-1] + C c2: no Z, every D-level traceless, no c1."""
    if any(l != 0 for (_, _, _, l) in x.terms) or not is_zero(x.c1):
        return False
    return all(is_zero(x.trace_at(k, 0)) for k in _levels(x, 2))


def in_horizontal(x: DiffOp) -> bool:
    """sl_n[Z, Z^-1] + C c1: no D, every Z-level traceless, no c2."""
    if any(k != 0 for (_, _, k, _) in x.terms) or not is_zero(x.c2):
        return False
    return all(is_zero(x.trace_at(0, l)) for l in _levels(x, 3))


def in_gl_vertical(x: DiffOp) -> bool:
    """gl_n[D, D^-1]^0 + C c2: no Z, D^0-level traceless, no c1."""
    if any(l != 0 for (_, _, _, l) in x.terms) or not is_zero(x.c1):
        return False
    return is_zero(x.trace_at(0, 0))


SMALL_RANK_NOTE = "vertical and horizontal subalgebra checks need n >= 2; skipped for n = 1"


def _modes(ctx: SuiteContext):
    return range(-ctx.window, ctx.window + 1)


def _heisenberg_modes(ctx: SuiteContext):
    reach = max(ctx.window, 1)
    return [k for k in range(-reach, reach + 1) if k]


def _vertical_images(ctx: SuiteContext):
    morphism = theta(ctx.n, ctx.params)
    for family in ("e", "f", "h"):
        for i in range(1, ctx.n):
            for k in _modes(ctx):
                yield f"{family}[{i},{k}]", morphism.image(GenSym(family, i, k))


# =========================================================
# CHECKS
# =========================================================
@suite.checks
def vertical(ctx: SuiteContext):
    if ctx.n < 2:
        ctx.diagnose(SMALL_RANK_NOTE)
        return
    morphism = theta(ctx.n, ctx.params)
    images = list(_vertical_images(ctx)) + [("c", morphism.image(GenSym("c")))]
    for name, image in images:
        yield ctx.check("vertical", dict(generator=name),
                        lambda x=image: None if in_vertical(x) else x.render())


@suite.checks
def horizontal(ctx: SuiteContext):
    if ctx.n < 2:
        ctx.diagnose(SMALL_RANK_NOTE)
        return
    morphism = theta(ctx.n, ctx.params)
    images = [
        (f"{family}[{i},0]", morphism.image(GenSym(family, i, 0)))
        for family in ("e", "f", "h")
        for i in range(ctx.n)
    ]
    for name, image in images:
        yield ctx.check("horizontal", dict(generator=name),
                        lambda x=image: None if in_horizontal(x) else x.render())
    for (a, x), (b, y) in combinations(images, 2):
        yield ctx.check("horizontal", dict(generator=f"[{a},{b}]"),
                        lambda x=x, y=y: _membership(in_horizontal, d_bracket(x, y)))


def _membership(predicate, value: DiffOp):
    return None if predicate(value) else value.render()


@suite.checks
def heisenberg(ctx: SuiteContext):
    n, p = ctx.n, ctx.params
    for k in _heisenberg_modes(ctx):
        expected = identity_op(n, k, 0, (p.one - p.dpow(n * k)) / n, p)
        yield ctx.check("heisenberg", dict(k=k), lambda k=k, e=expected: difference(heisenberg_v(n, k, p), e))

        for name, image in _vertical_images(ctx):
            yield ctx.check("heisenberg-commutes", dict(k=k, generator=name),
                            lambda k=k, x=image: residual(d_bracket(heisenberg_v(n, k, p), x)))
            yield ctx.check("heisenberg-closure", dict(k=k, generator=name),
                            lambda k=k, x=image: _membership(in_gl_vertical, d_bracket(heisenberg_v(n, k, p), x)))

        def central(k=k):
            value = d_bracket(heisenberg_v(n, k, p), DiffOp.monomial(n, 1, 1, -k, 0, params=p))
            wanted = DiffOp.central_element(n, "c2", k * (p.one - p.dpow(n * k)) / n, params=p)
            return difference(value, wanted)

        yield ctx.check("heisenberg-central", dict(k=k), central)


def verify_subalgebras(cfg: SuiteConfig) -> Report:
    return suite.run(cfg)
