# app/core/symfun.py
"""Power-sum expressions for elementary and hook monomial symmetric functions."""
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from app.core.errors import ArityError
from app.core.scalars import to_fraction


@lru_cache(maxsize=None)
def power_sum_ring(k: int):
    """Polynomial ring Q[p1, ..., pk] and its generators."""
    names = ",".join(f"p{r}" for r in range(1, max(k, 1) + 1))
    R, *gens = ring(names, QQ, grlex)
    return R, tuple(gens)


@lru_cache(maxsize=None)
def _newton_elementary(k: int):
    """[E_0, ..., E_k] in Q[p1..pk] via m E_m = sum_{i=1}^m (-1)^{i-1} E_{m-i} p_i."""
    R, p = power_sum_ring(k)
    E = [R.one]
    for m in range(1, k + 1):
        acc = R.zero
        for i in range(1, m + 1):
            term = E[m - i] * p[i - 1]
            acc = acc + term if i % 2 else acc - term
        E.append(acc * QQ(1, m))
    return tuple(E)


def p_poly(k: int):
    """e_k written in the power sums p_1..p_k."""
    if k < 1:
        raise ArityError(f"p_poly needs k >= 1, got {k}")
    return _newton_elementary(k)[k]


def mixed_sym_poly(k: int, a: int):
    """
    Power-sum expression of the monomial symmetric function of the hook
    partition (a, 1^{k-a}): sum_m (-1)^m p_{a+m} e_{k-a-m}. For a = 1 the
    sum equals k e_k and is divided by k, so mixed_sym_poly(k, 1) == p_poly(k).
    """
    if not 1 <= a <= k:
        raise ArityError(f"need 1 <= a <= k, got a={a}, k={k}")
    R, p = power_sum_ring(k)
    E = _newton_elementary(k)
    acc = R.zero
    for m in range(k - a + 1):
        term = p[a + m - 1] * E[k - a - m]
        acc = acc + term if m % 2 == 0 else acc - term
    if a == 1:
        acc = acc * QQ(1, k)
    return acc


def needed_arity(P) -> int:
    """Largest r with p_r actually occurring in P."""
    used = 0
    for monom in P.monoms():
        for r, e in enumerate(monom, start=1):
            if e:
                used = max(used, r)
    return used


def sym_poly_eval(P, values: Sequence):
    """Substitute values[r-1] for p_r."""
    if len(values) < needed_arity(P):
        raise ArityError(f"{needed_arity(P)} power sums needed, {len(values)} given")
    plain = all(isinstance(v, (int, Fraction)) for v in values)
    total = 0
    for monom, coeff in P.terms():
        term = to_fraction(coeff) if plain else coeff
        for r, e in enumerate(monom):
            if e:
                term = values[r] ** e * term
        total = total + term
    return total


def power_sums(values: Sequence, k: int) -> list:
    """[p_1, ..., p_k] of a finite multiset."""
    sums = []
    for r in range(1, k + 1):
        acc = 0
        for v in values:
            acc = acc + v ** r
        sums.append(acc)
    return sums


def elementary(k: int, values: Sequence):
    """e_k of a finite multiset by direct expansion."""
    total = 0
    for subset in combinations(values, k):
        prod = 1
        for v in subset:
            prod = prod * v
        total = total + prod
    return total


def geometric_power_sums(params, n: int, k: int) -> list:
    """Power sums of 1, d^n, ..., d^{(k-1)n}: p_r = (d^{rkn} - 1)/(d^{rn} - 1)."""
    return [(params.dpow(r * k * n) - params.one) / (params.dpow(r * n) - params.one) for r in range(1, k + 1)]
