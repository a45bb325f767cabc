# app/core/derops.py
"""
Matrix differential operators: n x n matrices over C<d, x^{+-1}> with
d x = x (d + s), s = n*beta, the central extension by the BKLY cocycle, the
root-lattice grading and the filtration by the degree in d.

Terms are keyed (i, j, r, l) for E[i,j] * d^r x^l (derivation to the left).
"""
from collections import defaultdict
from dataclasses import dataclass
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from app.core.diffops import (
    LaurentVector,
    matrix_positions,
    oracle_vectors_equal,
    root_degree,
)
from app.core.errors import NotHomogeneous, SizeMismatch
from app.core.operators import OperatorElement
from app.core.scalars import SYMBOLIC, Params, ScalarMatrix, is_zero, rank_det


class DerOp(OperatorElement):
    CENTRALS = ("cD",)
    LEFT = "d"
    RIGHT = "x"
    __slots__ = ()

    @property
    def cD(self):
        return self.central[0]

    @property
    def s(self):
        return self.params.beta * self.n


def shifted_power(n: int, i: int, j: int, r: int, shift, l: int = 0, params: Params = SYMBOLIC) -> DerOp:
    """E[i,j] (d + shift)^r x^l, expanded in the monomial basis."""
    shift = params.coerce(shift)
    terms = {(i, j, q, l): comb(r, q) * params.power(shift, r - q) for q in range(r + 1)}
    return DerOp(n, terms, params=params)


# -----------------------------
# PRODUCT AND COCYCLE
# -----------------------------
def _same_size(x: DerOp, y: DerOp):
    if x.n != y.n:
        raise SizeMismatch(f"matrix sizes differ: {x.n} vs {y.n}")


def w_product(x: DerOp, y: DerOp) -> DerOp:
    """Associative product: x^l g(d) = g(d - l s) x^l."""
    _same_size(x, y)
    s, p = x.s, x.params
    by_row = defaultdict(list)
    for (i, j, r, l), c in y.terms.items():
        by_row[i].append((j, r, l, c))
    acc: Dict[Tuple[int, int, int, int], object] = {}
    for (i, j, r, l), c in x.terms.items():
        for (jj, rr, ll, cc) in by_row.get(j, ()):
            shift = -l * s
            for q in range(rr + 1):
                weight = comb(rr, q) * p.power(shift, rr - q)
                if is_zero(weight):
                    continue
                key = (i, jj, r + q, l + ll)
                value = c * cc * weight
                acc[key] = acc[key] + value if key in acc else value
    return DerOp(x.n, acc, params=x.params)


def _bkly_sum(f_exp: int, g_exp: int, count: int, offset: int, s, params: Params):
    """sum_{a=0}^{count-1} (a s)^f_exp ((a + offset) s)^g_exp, with 0^0 = 1."""
    total = params.zero
    for a in range(count):
        total = total + params.power(s * a, f_exp) * params.power(s * (a + offset), g_exp)
    return total


def w_cocycle(x: DerOp, y: DerOp, one_sided: bool = False):
    _same_size(x, y)
    s = x.s
    total = x.params.zero
    for (i, j, r1, l1), cx in x.terms.items():
        if l1 == 0:
            continue
        for (ii, jj, r2, l2), cy in y.terms.items():
            if l2 != -l1 or ii != j or jj != i:
                continue
            if l1 > 0:
                value = _bkly_sum(r1, r2, l1, -l1, s, x.params)
            elif one_sided:
                continue
            else:
                value = -_bkly_sum(r2, r1, -l1, l1, s, x.params)
            total = total + cx * cy * value
    return total


def one_sided_cocycle(x: DerOp, y: DerOp):
    """The BKLY formula with its l1 < 0 branch dropped (not a cocycle)."""
    return w_cocycle(x, y, one_sided=True)


Cocycle = Callable[[DerOp, DerOp], object]


def w_bracket(x: DerOp, y: DerOp, cocycle: Cocycle = w_cocycle) -> DerOp:
    xy = w_product(x, y)
    yx = w_product(y, x)
    return (xy - yx) + DerOp(x.n, central=(cocycle(x, y),), params=x.params)


# -----------------------------
# GRADING AND FILTRATION
# -----------------------------
@dataclass(frozen=True)
class FiltDegree:
    alpha: Tuple[int, ...]
    k: int


def w_q_degree(x: DerOp) -> Tuple[int, ...]:
    degrees = {root_degree(x.n, i, j, l) for (i, j, _, l) in x.terms}
    if len(degrees) > 1:
        raise NotHomogeneous(f"element mixes root degrees {sorted(degrees)}")
    return degrees.pop() if degrees else (0,) * x.n


def w_in_filtration(x: DerOp, k: int) -> bool:
    """All derivation exponents <= k and every d^k coefficient traceless."""
    if k < 0:
        return not x.terms
    if any(r > k for (_, _, r, _) in x.terms):
        return False
    return all(is_zero(x.trace_at(k, l)) for l in {l for (_, _, _, l) in x.terms})


def w_filt_degree(x: DerOp) -> FiltDegree:
    alpha = w_q_degree(x)
    if not x.terms:
        return FiltDegree(alpha, 0)
    top = max(r for (_, _, r, _) in x.terms)
    k = top if w_in_filtration(x, top) else top + 1
    return FiltDegree(alpha, k)


def w_filtration_basis(n: int, alpha: Sequence[int], k: int, params: Params = SYMBOLIC) -> List[DerOp]:
    """A spanning set of the degree-alpha, filtration <= k piece."""
    if k < 0:
        return []
    positions = matrix_positions(n, alpha)
    l = tuple(alpha)[0]
    elements = [
        DerOp.monomial(n, i, j, r, l, params=params) for r in range(k) for (i, j) in positions
    ]
    diagonal = [i for (i, j) in positions if i == j]
    elements += [DerOp.monomial(n, i, j, k, l, params=params) for (i, j) in positions if i != j]
    elements += [
        DerOp(n, {(a, a, k, l): params.one, (b, b, k, l): -params.one}, params=params)
        for a, b in zip(diagonal, diagonal[1:])
    ]
    return elements


def _span_dim(elements: List[DerOp]) -> int:
    if not elements:
        return 0
    keys = sorted({key for e in elements for key in e.terms})
    zero = elements[0].params.zero
    rows = [[e.terms.get(key, zero) for key in keys] for e in elements]
    rank, _ = rank_det(ScalarMatrix.of(rows))
    return rank


def w_dim_diff(n: int, alpha: Sequence[int], k: int, params: Params = SYMBOLIC) -> int:
    return _span_dim(w_filtration_basis(n, alpha, k, params)) - _span_dim(
        w_filtration_basis(n, alpha, k - 1, params)
    )


def w_filtration_quotient(x: DerOp, level: int) -> list:
    """
    Coordinates in (<= level)/(<= level - 1) of an element of imaginary
    degree l*delta: the first n-1 diagonal entries of the d^level
    coefficient followed by the trace of the d^{level-1} coefficient.
    """
    alpha = w_q_degree(x)
    l = alpha[0]
    coords = [x.coefficient(m, m, level, l) for m in range(1, x.n)]
    coords.append(x.trace_at(level - 1, l) if level >= 1 else x.params.zero)
    return coords


# -----------------------------
# LAURENT ORACLE
# -----------------------------
def w_oracle_act(x: DerOp, vector: LaurentVector) -> LaurentVector:
    """Action with x = multiplication by z and d = s z d/dz."""
    s = x.s
    out: LaurentVector = {}
    for (row, m), v in vector.items():
        for (i, j, r, l), c in x.terms.items():
            if j != row:
                continue
            key = (i, m + l)
            value = c * v * x.params.power(s * (m + l), r)
            out[key] = out[key] + value if key in out else value
    return {key: c for key, c in out.items() if not is_zero(c)}


def w_oracle_apply(x: DerOp, m: int, component: int = 1) -> LaurentVector:
    return w_oracle_act(x, {(component, m): x.params.one})


def w_compose_matches(x: DerOp, y: DerOp, exponents: Optional[range] = None) -> bool:
    exponents = exponents if exponents is not None else range(-8, 9)
    xy = w_product(x, y)
    for m in exponents:
        for col in range(1, x.n + 1):
            start = {(col, m): x.params.one}
            if not oracle_vectors_equal(w_oracle_act(xy, start), w_oracle_act(x, w_oracle_act(y, start))):
                return False
    return True
