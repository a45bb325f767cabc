# app/suites/theorem2.py
"""The Yangian relations hold under vartheta, plus the filtration estimates for n = 2."""
from fractions import Fraction

from app.core.derops import w_filtration_quotient, w_in_filtration
from app.core.morphisms import vartheta
from app.core.presentations import (
    GenSym,
    expand,
    ladder_elements,
    linear,
    proportional,
    rescale_modes,
    substitute,
    w_comm,
    y_relations,
)
from app.core.scalars import ScalarMatrix, is_zero, rank_det
from app.schemas import Report, SuiteConfig
from app.suites.runner import Suite, SuiteContext, residual

suite = Suite("theorem2", window_key="R")

ESTIMATE_RANGE = (1, 2, 3)
RESCALING_REACH = 3


@suite.checks
def relations(ctx: SuiteContext):
    morphism = vartheta(ctx.n, ctx.params)
    for inst in y_relations(ctx.n, ctx.window, ctx.params):
        yield ctx.check(inst.family, inst.indices, lambda e=inst.expr: residual(morphism.evaluate(e)))


@suite.checks
def ladder(ctx: SuiteContext):
    """[H3, x+-_{i,r}] = +-x+-_{i,r+1} and [H4, x+-_{i,r}] = +-x+-_{i,r+2}."""
    morphism = vartheta(ctx.n, ctx.params)
    h3, h4 = (morphism.evaluate(h) for h in ladder_elements(ctx.n, ctx.params))
    for step, h in ((1, h3), (2, h4)):
        for sign, eps in (("+", 1), ("-", -1)):
            for i in range(ctx.n):
                for r in range(max(ctx.window, 1) + 1):
                    def shifted(h=h, fam="x" + sign, eps=eps, i=i, r=r, step=step):
                        x = morphism.image(GenSym(fam, i, r))
                        target = morphism.image(GenSym(fam, i, r + step))
                        return residual(morphism.bracket(h, x) - target.scale(eps))

                    yield ctx.check("ladder", dict(H=step + 2, sign=sign, i=i, r=r), shifted)


@suite.checks
def auxiliary(ctx: SuiteContext):
    """sum_i vartheta(w[i,l]_(0,0)) = 0."""
    if ctx.n < 2:
        return
    morphism = vartheta(ctx.n, ctx.params)
    for l in ESTIMATE_RANGE:
        def total(l=l):
            value = morphism.zero()
            for i in range(ctx.n):
                value = value + morphism.evaluate(w_comm(ctx.n, i, l, 0, 0))
            return residual(value)

        yield ctx.check("auxiliary", dict(l=l), total)


@suite.checks
def rescaling(ctx: SuiteContext):
    """Modes scaled by beta^r turn each relation into a multiple of its beta = 1 form."""
    reach = min(ctx.window, RESCALING_REACH)
    unit = ctx.params.specialize({"beta": 1})
    pairs = zip(y_relations(ctx.n, reach, ctx.params), y_relations(ctx.n, reach, unit))
    for inst, unit_inst in pairs:
        yield ctx.check("rescaling", dict(relation=inst.family, **inst.indices),
                        _rescaled, inst.expr, unit_inst.expr, ctx.params)


def _rescaled(expr, unit_expr, p):
    scaled = expand(substitute(expr, lambda sym: rescale_modes(sym, p)))
    target = expand(unit_expr)
    if not scaled and not target:
        return None
    lam = proportional(scaled, target)
    if lam is None or is_zero(lam):
        return f"rescaled relation {scaled} is not a multiple of {target}"
    return None


# =========================================================
# FILTRATION ESTIMATES (n = 2)
# =========================================================
def _leading(morphism, p, l: int, N: int):
    top = morphism.evaluate(w_comm(2, 1, l, 0, N))
    both = top + morphism.evaluate(w_comm(2, 0, l, 0, N))
    if any(r > N for (_, _, r, _) in top.terms):
        return f"w[1,{l}]_(0,{N}) exceeds d-degree {N}: {top.render()}"
    lead = p.lift(2 ** (l - 1))
    expected = {(1, 1): lead, (2, 2): -lead}
    found = top.matrix_at(N, l)
    for (i, j) in sorted(set(expected) | set(found)):
        c = found.get((i, j), p.zero)
        if not is_zero(c - expected.get((i, j), p.zero)):
            return f"leading coefficient at E[{i},{j}] is {c}, expected {expected.get((i, j), 0)}"
    if any(r >= N for (_, _, r, _) in both.terms):
        return f"sum keeps d-degree {N}: {both.render()}"
    trace = both.trace_at(N - 1, l)
    wanted = -lead * N * p.beta * 2
    if not is_zero(trace - wanted):
        return f"trace of the d^{N - 1} coefficient is {trace}, expected {wanted}"
    return None


@suite.checks
def leading(ctx: SuiteContext):
    if ctx.n != 2:
        return
    morphism = vartheta(2, ctx.params)
    for l in ESTIMATE_RANGE:
        for N in ESTIMATE_RANGE:
            yield ctx.check("leading", dict(l=l, N=N), _leading, morphism, ctx.params, l, N)


def _independent(morphism, l: int, N: int):
    rows = [w_filtration_quotient(morphism.evaluate(w_comm(2, i, l, 0, N)), N) for i in (0, 1)]
    rank, _ = rank_det(ScalarMatrix.of(rows))
    return None if rank == 2 else f"quotient images have rank {rank}: {rows}"


@suite.checks
def independence(ctx: SuiteContext):
    if ctx.n != 2:
        return
    morphism = vartheta(2, ctx.params)
    for l in ESTIMATE_RANGE:
        for N in ESTIMATE_RANGE:
            yield ctx.check("independence", dict(l=l, N=N), _independent, morphism, l, N)


def _induction(morphism, p, i: int, l: int, M: int):
    combo = linear([
        (p.one, w_comm(2, i, l, 1, M)),
        (-p.lift(Fraction(M + 1 - l, M + 1)), w_comm(2, i, l, 0, M + 1)),
        (p.lift(Fraction(l, M + 1)), w_comm(2, i + 1, l, 0, M + 1)),
    ])
    value = morphism.evaluate(combo)
    return None if w_in_filtration(value, M) else f"not in filtration <= {M}: {value.render()}"


@suite.checks
def induction(ctx: SuiteContext):
    if ctx.n != 2:
        return
    morphism = vartheta(2, ctx.params)
    for i in (0, 1):
        for l in (1, 2):
            for M in (0, 1, 2):
                yield ctx.check("induction", dict(i=i, l=l, M=M), _induction, morphism, ctx.params, i, l, M)


def verify_theorem2(cfg: SuiteConfig) -> Report:
    return suite.run(cfg)
