# app/suites/miki.py
"""The classical Miki rotation is a Lie automorphism with the expected generator images."""
from itertools import product

from app.core.diffops import DiffOp, d_bracket
from app.core.morphisms import miki_bar, miki_bar_inverse
from app.schemas import Report, SuiteConfig
from app.suites.runner import Suite, SuiteContext, difference, residual

suite = Suite("miki", window_key="K")


def _monomials(ctx: SuiteContext):
    n, p = ctx.n, ctx.params
    W = range(-ctx.window, ctx.window + 1)
    for i, j, k, l in product(range(1, n + 1), range(1, n + 1), W, W):
        yield (i, j, k, l), DiffOp.monomial(n, i, j, k, l, params=p)


def _preserves(x: DiffOp, y: DiffOp):
    return difference(miki_bar(d_bracket(x, y)), d_bracket(miki_bar(x), miki_bar(y)))


@suite.checks
def brackets(ctx: SuiteContext):
    monomials = list(_monomials(ctx))
    for (kx, x), (ky, y) in product(monomials, monomials):
        # brackets of matrix units that never compose vanish on both sides
        if kx[1] != ky[0] and ky[1] != kx[0]:
            continue
        yield ctx.check("bracket", dict(x=str(kx), y=str(ky)), _preserves, x, y)


@suite.checks
def generators(ctx: SuiteContext):
    n, p = ctx.n, ctx.params
    mono = DiffOp.monomial
    cases = [
        ("E[n,1]Z", mono(n, n, 1, 0, 1, params=p), mono(n, n, 1, 1, 0, p.power(-p.d, n), params=p)),
        ("E[1,n]Z^-1", mono(n, 1, n, 0, -1, params=p), mono(n, 1, n, -1, 0, p.power(-p.d, -n), params=p)),
    ]
    for i in range(1, n):
        cases.append((f"E[{i},{i + 1}]", mono(n, i, i + 1, 0, 0, params=p), mono(n, i, i + 1, 0, 0, params=p)))
        cases.append((f"E[{i + 1},{i}]", mono(n, i + 1, i, 0, 0, params=p), mono(n, i + 1, i, 0, 0, params=p)))
        for sign in (1, -1):
            source = DiffOp(n, {(i, i, sign, 0): p.one, (i + 1, i + 1, sign, 0): -p.one}, params=p)
            w = p.dpow(-sign * n)
            target = DiffOp(n, {(i, i, 0, -sign): w, (i + 1, i + 1, 0, -sign): -w}, params=p)
            cases.append((f"H[{i}]D^{sign}", source, target))
    for name, source, target in cases:
        yield ctx.check("generators", dict(element=name), lambda s=source, t=target: difference(miki_bar(s), t))


@suite.checks
def centrals(ctx: SuiteContext):
    n, p = ctx.n, ctx.params
    c1 = DiffOp.central_element(n, "c1", params=p)
    c2 = DiffOp.central_element(n, "c2", params=p)
    yield ctx.check("centrals", dict(element="c1"), lambda: difference(miki_bar(c1), c2))
    yield ctx.check("centrals", dict(element="c2"), lambda: difference(miki_bar(c2), -c1))
    yield ctx.check("centrals", dict(element="c1-twice"), lambda: difference(miki_bar(miki_bar(c1)), -c1))


@suite.checks
def inverse(ctx: SuiteContext):
    for key, x in _monomials(ctx):
        yield ctx.check(
            "inverse", dict(x=str(key)),
            lambda x=x: residual(miki_bar_inverse(miki_bar(x)) - x) or residual(miki_bar(miki_bar_inverse(x)) - x),
        )


@suite.checks
def grading(ctx: SuiteContext):
    """A (x) D^k Z^l lands on D^l Z^{-k}."""
    for (i, j, k, l), x in _monomials(ctx):
        def rotated(x=x, expected=(i, j, l, -k)):
            keys = list(miki_bar(x).terms)
            return None if keys == [expected] else f"terms {keys}, expected {[expected]}"

        yield ctx.check("grading", dict(x=str((i, j, k, l))), rotated)


def verify_miki(cfg: SuiteConfig) -> Report:
    return suite.run(cfg)
