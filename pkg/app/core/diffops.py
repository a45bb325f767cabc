# app/core/diffops.py
"""
Matrix difference operators: the algebra of n x n matrices over
C<Z^{+-1}, D^{+-1}> with DZ = t ZD and t = d^n, the two 2-cocycles, the
centrally extended Lie bracket and the root-lattice grading.

Terms are keyed (i, j, k, l) for E[i,j] * D^k Z^l (D to the left of Z).
"""
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from app.core.errors import NotHomogeneous, SizeMismatch
from app.core.operators import OperatorElement
from app.core.scalars import SYMBOLIC, Params, is_zero


class DiffOp(OperatorElement):
    CENTRALS = ("c1", "c2")
    LEFT = "D"
    RIGHT = "Z"
    __slots__ = ()

    @property
    def c1(self):
        return self.central[0]

    @property
    def c2(self):
        return self.central[1]

    def t_power(self, e: int):
        return self.params.dpow(self.n * e)


def identity_op(n: int, k: int = 0, l: int = 0, coeff=1, params: Params = SYMBOLIC) -> DiffOp:
    """coeff * I (x) D^k Z^l."""
    c = params.coerce(coeff)
    return DiffOp(n, {(m, m, k, l): c for m in range(1, n + 1)}, params=params)


# -----------------------------
# PRODUCT AND COCYCLES
# -----------------------------
def _same_size(x: DiffOp, y: DiffOp):
    if x.n != y.n:
        raise SizeMismatch(f"matrix sizes differ: {x.n} vs {y.n}")


def d_product(x: DiffOp, y: DiffOp) -> DiffOp:
    """Associative product; central summands multiply as zero."""
    _same_size(x, y)
    by_row = defaultdict(list)
    for (i, j, k, l), c in y.terms.items():
        by_row[i].append((j, k, l, c))
    acc: Dict[Tuple[int, int, int, int], object] = {}
    for (i, j, k, l), c in x.terms.items():
        for (jj, kk, ll, cc) in by_row.get(j, ()):
            # D^k Z^l D^kk Z^ll = t^{-l*kk} D^{k+kk} Z^{l+ll}
            key = (i, jj, k + kk, l + ll)
            value = c * cc * x.t_power(-l * kk)
            acc[key] = acc[key] + value if key in acc else value
    return DiffOp(x.n, acc, params=x.params)


def _paired_terms(x: DiffOp, y: DiffOp):
    """Yield (k1, l1, cx, cy) for term pairs with opposite degrees and tr(M1 M2) != 0."""
    _same_size(x, y)
    for (i, j, k, l), cx in x.terms.items():
        cy = y.terms.get((j, i, -k, -l))
        if cy is not None:
            yield k, l, cx, cy


def d_cocycle1(x: DiffOp, y: DiffOp, twisted: bool = True):
    total = x.params.zero
    for k, l, cx, cy in _paired_terms(x, y):
        if l:
            weight = x.t_power(k * l) if twisted else x.params.one
            total = total + l * weight * cx * cy
    return total


def d_cocycle2(x: DiffOp, y: DiffOp):
    total = x.params.zero
    for k, l, cx, cy in _paired_terms(x, y):
        if k:
            total = total + k * x.t_power(k * l) * cx * cy
    return total


def untwisted_cocycle1(x: DiffOp, y: DiffOp):
    """The first cocycle with the t^{k1 l1} weight dropped (not a cocycle)."""
    return d_cocycle1(x, y, twisted=False)


Cocycle = Callable[[DiffOp, DiffOp], object]
DEFAULT_COCYCLES: Tuple[Cocycle, Cocycle] = (d_cocycle1, d_cocycle2)


def d_bracket(x: DiffOp, y: DiffOp, cocycles: Sequence[Cocycle] = DEFAULT_COCYCLES) -> DiffOp:
    xy = d_product(x, y)
    yx = d_product(y, x)
    central = tuple(phi(x, y) for phi in cocycles)
    return (xy - yx) + DiffOp(x.n, central=central, params=x.params)


# -----------------------------
# GRADING
# -----------------------------
@dataclass(frozen=True)
class DiffDegree:
    """Root-lattice coordinates over alpha_0..alpha_{n-1} and the D-degree."""

    alpha: Tuple[int, ...]
    k: int

    def __add__(self, other: "DiffDegree") -> "DiffDegree":
        return DiffDegree(tuple(a + b for a, b in zip(self.alpha, other.alpha)), self.k + other.k)

    @property
    def l(self) -> int:
        return self.alpha[0]


def root_degree(n: int, i: int, j: int, l: int) -> Tuple[int, ...]:
    """Q-degree of E[i,j] times the l-th power of the loop variable."""
    alpha = [l] * n
    for p in range(1, j):
        alpha[p] += 1
    for p in range(1, i):
        alpha[p] -= 1
    return tuple(alpha)


def monomial_degree(n: int, i: int, j: int, k: int, l: int) -> DiffDegree:
    return DiffDegree(root_degree(n, i, j, l), k)


def d_degree(x: DiffOp) -> DiffDegree:
    degrees = {monomial_degree(x.n, i, j, k, l) for (i, j, k, l) in x.terms}
    origin = DiffDegree((0,) * x.n, 0)
    if any(not is_zero(c) for c in x.central):
        degrees.add(origin)
    if len(degrees) > 1:
        raise NotHomogeneous(f"element mixes degrees {sorted(degrees, key=repr)}")
    return degrees.pop() if degrees else origin


def d_traceless(x: DiffOp) -> bool:
    return is_zero(x.trace_at(0, 0))


def matrix_positions(n: int, alpha: Sequence[int]) -> List[Tuple[int, int]]:
    """All (i, j) whose matrix unit sits in root degree alpha."""
    alpha = tuple(alpha)
    if len(alpha) != n:
        raise SizeMismatch(f"degree vector has length {len(alpha)}, expected {n}")
    l = alpha[0]
    return [
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if root_degree(n, i, j, l) == alpha
    ]


def d_graded_basis(n: int, deg: DiffDegree, params: Params = SYMBOLIC) -> List[DiffOp]:
    """Basis of one graded piece of the traceless subalgebra, centrals excluded."""
    positions = matrix_positions(n, deg.alpha)
    l = deg.l
    if positions and (l, deg.k) == (0, 0) and positions[0][0] == positions[0][1]:
        return [
            DiffOp(n, {(m, m, 0, 0): params.one, (m + 1, m + 1, 0, 0): -params.one}, params=params)
            for m in range(1, n)
        ]
    return [DiffOp.monomial(n, i, j, deg.k, l, params=params) for (i, j) in positions]


def classify_degree(n: int, alpha: Sequence[int]) -> str:
    """'zero', 'imaginary', 'real' or 'none' for an affine sl_n root-lattice vector."""
    alpha = tuple(alpha)
    if all(a == 0 for a in alpha):
        return "zero"
    m = alpha[0]
    gamma = [a - m for a in alpha[1:]]
    if all(g == 0 for g in gamma):
        return "imaginary"
    support = [p for p, g in enumerate(gamma) if g != 0]
    contiguous = support == list(range(support[0], support[-1] + 1))
    if contiguous and (all(gamma[p] == 1 for p in support) or all(gamma[p] == -1 for p in support)):
        return "real"
    return "none"


def expected_graded_dim(n: int, deg: DiffDegree) -> int:
    kind = classify_degree(n, deg.alpha)
    if kind == "zero":
        return n if deg.k != 0 else n - 1
    if kind == "imaginary":
        return n
    if kind == "real":
        return 1
    return 0


# -----------------------------
# LAURENT ORACLE
# -----------------------------
# A vector of Laurent polynomials is a dict (row, exponent) -> coefficient.
LaurentVector = Dict[Tuple[int, int], object]


def d_oracle_act(x: DiffOp, vector: LaurentVector) -> LaurentVector:
    """Action with Z = multiplication by z and D = substitution z -> t z."""
    out: LaurentVector = {}
    for (row, m), v in vector.items():
        for (i, j, k, l), c in x.terms.items():
            if j != row:
                continue
            key = (i, m + l)
            value = c * v * x.t_power(k * (m + l))
            out[key] = out[key] + value if key in out else value
    return {key: c for key, c in out.items() if not is_zero(c)}


def d_oracle_apply(x: DiffOp, m: int, component: int) -> LaurentVector:
    return d_oracle_act(x, {(component, m): x.params.one})


def oracle_vectors_equal(u: LaurentVector, v: LaurentVector) -> bool:
    keys = set(u) | set(v)
    return all(is_zero(u.get(key, 0) - v.get(key, 0)) for key in keys)


def d_compose_matches(x: DiffOp, y: DiffOp, exponents: Optional[range] = None) -> bool:
    """Does d_product(x, y) act as the composite of the actions of x and y?"""
    exponents = exponents if exponents is not None else range(-8, 9)
    xy = d_product(x, y)
    for m in exponents:
        for col in range(1, x.n + 1):
            start = {(col, m): x.params.one}
            if not oracle_vectors_equal(d_oracle_act(xy, start), d_oracle_act(x, d_oracle_act(y, start))):
                return False
    return True
