# app/suites/theorem1.py
"""The toroidal relations hold under theta, plus the spanning facts used for surjectivity."""
from app.core.diffops import DiffDegree, d_graded_basis
from app.core.morphisms import mutated_theta, theta
from app.core.presentations import bracket, gen, u_relations, v_comm
from app.core.scalars import ScalarMatrix, rank_det
from app.schemas import Report, SuiteConfig
from app.suites.runner import Suite, SuiteContext, residual

suite = Suite("theorem1", window_key="K", mutations=("theta-untwisted",))

SPAN_LEVELS = (1, 2)
SPAN_MODES = range(-2, 3)


def _morphism(ctx: SuiteContext):
    if ctx.mutation == "theta-untwisted":
        return mutated_theta(ctx.n, ctx.params)
    return theta(ctx.n, ctx.params)


# =========================================================
# RELATIONS
# =========================================================
@suite.checks
def relations(ctx: SuiteContext):
    morphism = _morphism(ctx)
    for inst in u_relations(ctx.n, ctx.window, ctx.params):
        yield ctx.check(inst.family, inst.indices, lambda e=inst.expr: residual(morphism.evaluate(e)))


@suite.checks
def footnote(ctx: SuiteContext):
    """[e_{j,a}, e_{j,b}] is a consequence of (u2) and must vanish."""
    if ctx.n < 2:
        return
    morphism = _morphism(ctx)
    W = range(-ctx.window, ctx.window + 1)
    for j in range(ctx.n):
        for a in W:
            for b in W:
                expr = bracket(gen("e", j, a, ctx.n), gen("e", j, b, ctx.n))
                yield ctx.check("footnote", dict(j=j, a=a, b=b), lambda e=expr: residual(morphism.evaluate(e)))


# =========================================================
# SPANNING
# =========================================================
def _span_rank(ctx: SuiteContext, l: int, k: int):
    n = ctx.n
    morphism = _morphism(ctx)
    reach = max(ctx.window, 2)
    basis = d_graded_basis(n, DiffDegree((l,) * n, k), ctx.params)
    rows = []
    for i in range(n):
        for a in range(-reach, reach + 1):
            image = morphism.evaluate(v_comm(n, i, l, a, k - a))
            if any((kk, ll) != (k, l) or ii != jj for (ii, jj, kk, ll) in image.terms):
                return f"v[{i},{l}]_({a},{k - a}) leaves degree ({l}delta;{k}): {image.render()}"
            rows.append([image.coefficient(m, m, k, l) for m in range(1, n + 1)])
    rank, _ = rank_det(ScalarMatrix.of(rows))
    if rank != len(basis):
        return f"images span rank {rank}, graded piece has dimension {len(basis)}"
    return None


@suite.checks
def spanning(ctx: SuiteContext):
    if ctx.n < 2:
        return
    for l in SPAN_LEVELS:
        for k in SPAN_MODES:
            yield ctx.check("spanning", dict(l=l, k=k), _span_rank, ctx, l, k)


@suite.checks
def diamond(ctx: SuiteContext):
    """theta of sum_i v[i,l]_(0,0) vanishes."""
    if ctx.n < 2:
        return
    morphism = _morphism(ctx)
    for l in SPAN_LEVELS:
        def total(l=l):
            value = morphism.zero()
            for i in range(ctx.n):
                value = value + morphism.evaluate(v_comm(ctx.n, i, l, 0, 0))
            return residual(value)

        yield ctx.check("diamond", dict(l=l), total)


def verify_theorem1(cfg: SuiteConfig) -> Report:
    return suite.run(cfg)
