# app/suites/dims.py
"""Graded dimensions of both operator algebras against the root-theoretic case tables."""
from itertools import product

from app.core.derops import w_dim_diff
from app.core.diffops import DiffDegree, DiffOp, classify_degree, d_graded_basis, expected_graded_dim
from app.core.morphisms import ad_poly
from app.core.scalars import ScalarMatrix, rank_det
from app.schemas import Report, SuiteConfig
from app.suites.runner import Suite, SuiteContext

suite = Suite("dims", window_key="K")

TABLE_REACH = 3
SHIFT_LEVELS = (1, 2)
SHIFT_MODES = range(-2, 3)


def _alphas(n: int, reach: int):
    return product(range(-reach, reach + 1), repeat=n)


def expected_dim_diff(n: int, alpha, k: int) -> int:
    kind = classify_degree(n, alpha)
    if kind in ("zero", "imaginary"):
        return n - (1 if k == 0 else 0)
    return 1 if kind == "real" else 0


@suite.checks
def graded(ctx: SuiteContext):
    n = ctx.n
    reach = min(ctx.window, TABLE_REACH)
    for alpha in _alphas(n, reach):
        for k in range(-reach, reach + 1):
            deg = DiffDegree(alpha, k)

            def compare(deg=deg):
                got = len(d_graded_basis(n, deg, ctx.params))
                want = expected_graded_dim(n, deg)
                return None if got == want else f"dimension {got}, table gives {want}"

            yield ctx.check("graded-dim", dict(alpha=str(alpha), k=k), compare)


@suite.checks
def filtered(ctx: SuiteContext):
    n = ctx.n
    reach = min(ctx.window, TABLE_REACH)
    for alpha in _alphas(n, reach):
        for k in range(0, reach + 2):
            def compare(alpha=alpha, k=k):
                got = w_dim_diff(n, alpha, k, ctx.params)
                want = expected_dim_diff(n, alpha, k)
                return None if got == want else f"dimension difference {got}, table gives {want}"

            yield ctx.check("dim-diff", dict(alpha=str(alpha), k=k), compare)


def _shift_rank(ctx: SuiteContext, i: int, l: int, k: int):
    n, p = ctx.n, ctx.params
    rows = []
    for m in range(1, n + 1):
        image = ad_poly(n, i, l, DiffOp.monomial(n, m, m, k, l, params=p), 1, p)
        if any((kk, ll) != (k + l, l) or a != b for (a, b, kk, ll) in image.terms):
            return f"image of E[{m},{m}] D^{k} Z^{l} leaves degree ({l}delta;{k + l})"
        rows.append([image.coefficient(r, r, k + l, l) for r in range(1, n + 1)])
    rank, _ = rank_det(ScalarMatrix.of(rows))
    return None if rank == n else f"rank {rank}, expected {n}"


@suite.checks
def shifts(ctx: SuiteContext):
    for i in range(ctx.n):
        for l in SHIFT_LEVELS:
            for k in SHIFT_MODES:
                yield ctx.check("ad-shift", dict(i=i, l=l, k=k), _shift_rank, ctx, i, l, k)


def verify_dims(cfg: SuiteConfig) -> Report:
    return suite.run(cfg)
