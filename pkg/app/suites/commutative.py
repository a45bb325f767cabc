# app/suites/commutative.py
"""The commutative family: commutativity, nondegeneracy and its construction through shift operators."""
from itertools import product

from app.core.diffops import DiffOp, d_bracket
from app.core.morphisms import (
    a_matrix_diagonal,
    commutative_gen,
    commutative_matrix,
    lift_operator,
    shift_closed_form,
    shift_element,
    theta,
)
from app.core.presentations import GenSym
from app.core.scalars import is_zero, rank_det
from app.schemas import Report, SuiteConfig
from app.suites.runner import Suite, SuiteContext, difference, residual

suite = Suite("commutative", window_key="K")


def _degrees(ctx: SuiteContext):
    return range(1, max(ctx.window, 1) + 1)


@suite.checks
def commute(ctx: SuiteContext):
    n, p = ctx.n, ctx.params
    keys = list(product(range(n), _degrees(ctx)))
    for a, (i, k) in enumerate(keys):
        for (j, l) in keys[a + 1:]:
            yield ctx.check(
                "commute", dict(i=i, k=k, j=j, l=l),
                lambda i=i, k=k, j=j, l=l: residual(d_bracket(commutative_gen(n, i, k, p), commutative_gen(n, j, l, p))),
            )


def _vandermonde(ctx: SuiteContext, k: int):
    rank, det = rank_det(commutative_matrix(ctx.n, k, ctx.params))
    if rank == ctx.n and not is_zero(det):
        return None
    if not ctx.params.generic_a(ctx.n):
        ctx.diagnose(f"genericity violation: coinciding a-parameters make det C(d^{k}) vanish")
        return None
    return f"rank {rank}, det {det}"


@suite.checks
def vandermonde(ctx: SuiteContext):
    for k in _degrees(ctx):
        yield ctx.check("vandermonde", dict(k=k), _vandermonde, ctx, k)


@suite.checks
def lift(ctx: SuiteContext):
    """L_{i-1;k} L_{i;-k} (I (x) Z^k) = A_i(d^k) (x) Z^k."""
    n, p = ctx.n, ctx.params
    for i in range(1, n + 1):
        for k in _degrees(ctx):
            def lifted(i=i, k=k):
                start = DiffOp(n, {(m, m, 0, k): p.one for m in range(1, n + 1)}, params=p)
                diagonal = a_matrix_diagonal(n, i, p.dpow(k), p)
                expected = DiffOp(n, {(m, m, 0, k): diagonal[m - 1] for m in range(1, n + 1)}, params=p)
                return difference(lift_operator(n, i, k, start, p), expected)

            yield ctx.check("lift", dict(i=i, k=k), lifted)


@suite.checks
def shift(ctx: SuiteContext):
    n, p = ctx.n, ctx.params
    morphism = theta(n, p)
    reach = max(ctx.window, 1)
    modes = [k for k in range(-reach, reach + 1) if k]
    for i in range(n):
        for k in modes:
            yield ctx.check(
                "shift-closed-form", dict(i=i, k=k),
                lambda i=i, k=k: difference(shift_element(n, i, k, p)[1], shift_closed_form(n, i, k, p)),
            )
            for j in range(n):
                for l in (-1, 0, 1):
                    def contract(i=i, k=k, j=j, l=l):
                        value = d_bracket(shift_element(n, i, k, p)[1], morphism.image(GenSym("e", j, l)))
                        expected = morphism.image(GenSym("e", j, l + k)) if i == j else DiffOp.zero(n, p)
                        return difference(value, expected)

                    yield ctx.check("shift-contract", dict(i=i, k=k, j=j, l=l), contract)


def verify_commutative(cfg: SuiteConfig) -> Report:
    return suite.run(cfg)
