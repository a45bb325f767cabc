# app/core/morphisms.py
"""
Generator assignments onto the operator algebras, expression evaluation
and the distinguished elements built from them: the classical Miki
rotation, shift elements, Heisenberg elements and the commutative family.
"""
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from app.core.derops import DerOp, shifted_power, w_bracket
from app.core.diffops import DiffOp, d_bracket
from app.core.errors import IllegalGenerator, ZeroModeError
from app.core.presentations import (
    U_FAMILIES,
    Y_FAMILIES,
    Bracket,
    Gen,
    GenSym,
    LieExpr,
    Scaled,
    Sum,
    bbar,
)
from app.core.scalars import SYMBOLIC, Params, ScalarMatrix, solve_linear, to_fraction
from app.core.symfun import elementary, p_poly

MUTATIONS = ("theta-untwisted",)
# Entries in each per-(n, i, k, params) solve cache.
CACHE_SIZE = 512


# ---------------------------------------------------
# MORPHISMS
# ---------------------------------------------------
class Morphism:
    """A generator assignment plus a memoized evaluator for Lie expressions."""

    def __init__(self, n: int, side: str, params: Params = SYMBOLIC, mutation: Optional[str] = None):
        if side not in ("difference", "differential"):
            raise ValueError(f"unknown side '{side}'")
        if mutation is not None and mutation not in MUTATIONS:
            raise ValueError(f"unknown mutation '{mutation}'")
        self.n = n
        self.side = side
        self.params = params
        self.mutation = mutation
        self._images: Dict[GenSym, object] = {}
        self._memo: Dict[LieExpr, object] = {}

    def __repr__(self):
        tag = f", mutation={self.mutation}" if self.mutation else ""
        return f"Morphism(n={self.n}, side={self.side}{tag})"

    @property
    def element_type(self):
        return DiffOp if self.side == "difference" else DerOp

    def zero(self):
        return self.element_type.zero(self.n, self.params)

    def bracket(self, x, y):
        return d_bracket(x, y) if self.side == "difference" else w_bracket(x, y)

    def legal(self, sym: GenSym) -> bool:
        families = U_FAMILIES if self.side == "difference" else Y_FAMILIES
        if sym.family not in families:
            return False
        if sym.family == "c":
            return True
        if sym.i is None or sym.idx is None or not 0 <= sym.i < self.n:
            return False
        return self.side == "difference" or sym.idx >= 0

    def image(self, sym: GenSym):
        if sym not in self._images:
            if not self.legal(sym):
                raise IllegalGenerator(f"{sym} has no image under {self!r}")
            build = self._theta_image if self.side == "difference" else self._vartheta_image
            self._images[sym] = build(sym)
        return self._images[sym]

    def _theta_image(self, sym: GenSym) -> DiffOp:
        n, p = self.n, self.params
        if sym.family == "c":
            return DiffOp.central_element(n, "c2", params=p)
        i, k = sym.i, sym.idx
        if i == 0:
            if sym.family == "e":
                return DiffOp.monomial(n, n, 1, k, 1, params=p)
            if sym.family == "f":
                # Z^{-1} D^k = t^k D^k Z^{-1}
                return DiffOp.monomial(n, 1, n, k, -1, p.dpow(n * k), params=p)
            terms: Dict = {}
            terms[(n, n, k, 0)] = p.one
            terms[(1, 1, k, 0)] = terms.get((1, 1, k, 0), p.zero) - p.dpow(n * k)
            central = (p.one if k == 0 else p.zero, p.zero)
            return DiffOp(n, terms, central, p)
        twist = p.one if self.mutation == "theta-untwisted" else p.dpow((n - i) * k)
        if sym.family == "e":
            return DiffOp.monomial(n, i, i + 1, k, 0, twist, params=p)
        if sym.family == "f":
            return DiffOp.monomial(n, i + 1, i, k, 0, twist, params=p)
        return DiffOp(n, {(i, i, k, 0): twist, (i + 1, i + 1, k, 0): -twist}, params=p)

    def _vartheta_image(self, sym: GenSym) -> DerOp:
        n, p = self.n, self.params
        i, r = sym.i, sym.idx
        if i == 0:
            if sym.family == "x+":
                return DerOp.monomial(n, n, 1, r, 1, params=p)
            s = p.beta * n
            if sym.family == "x-":
                # x^{-1} d^r = (d + s)^r x^{-1}
                return shifted_power(n, 1, n, r, s, -1, p)
            value = DerOp.monomial(n, n, n, r, 0, params=p) - shifted_power(n, 1, 1, r, s, 0, p)
            if r == 0:
                value = value + DerOp.central_element(n, "cD", params=p)
            return value
        shift = p.beta * (n - i)
        if sym.family == "x+":
            return shifted_power(n, i, i + 1, r, shift, 0, p)
        if sym.family == "x-":
            return shifted_power(n, i + 1, i, r, shift, 0, p)
        return shifted_power(n, i, i, r, shift, 0, p) - shifted_power(n, i + 1, i + 1, r, shift, 0, p)

    def evaluate(self, expr: LieExpr):
        """Structural fold: generators through the assignment, brackets in the target algebra."""
        if isinstance(expr, Gen):
            return self.image(expr.sym)
        if isinstance(expr, Scaled):
            return self.evaluate(expr.expr).scale(expr.coeff)
        if isinstance(expr, Sum):
            total = self.zero()
            for term in expr.terms:
                total = total + self.evaluate(term)
            return total
        if isinstance(expr, Bracket):
            cached = self._memo.get(expr)
            if cached is None:
                cached = self.bracket(self.evaluate(expr.left), self.evaluate(expr.right))
                self._memo[expr] = cached
            return cached
        raise TypeError(f"unknown expression node {type(expr).__name__}")


def theta(n: int, params: Params = SYMBOLIC) -> Morphism:
    return Morphism(n, "difference", params)


def vartheta(n: int, params: Params = SYMBOLIC) -> Morphism:
    return Morphism(n, "differential", params)


def mutated_theta(n: int, params: Params = SYMBOLIC) -> Morphism:
    """theta with the d^{(n-i)k} twist of the i >= 1 generators dropped."""
    return Morphism(n, "difference", params, mutation="theta-untwisted")


def eval_expr(expr: LieExpr, morphism: Morphism):
    return morphism.evaluate(expr)


# ---------------------------------------------------
# MIKI ROTATION
# ---------------------------------------------------
def _miki_weight(n: int, k: int, l: int, params: Params):
    """A (x) D^k Z^l -> weight * A (x) D^l Z^{-k}: d^{-nk} (-d)^{nl} t^{kl}."""
    return params.dpow(-n * k) * params.power(-params.d, n * l) * params.dpow(n * k * l)


def miki_bar(x: DiffOp) -> DiffOp:
    n, p = x.n, x.params
    terms = {(i, j, l, -k): c * _miki_weight(n, k, l, p) for (i, j, k, l), c in x.terms.items()}
    c1, c2 = x.central
    return DiffOp(n, terms, (-c2, c1), p)


def miki_bar_inverse(x: DiffOp) -> DiffOp:
    n, p = x.n, x.params
    terms = {(i, j, -l, k): c / _miki_weight(n, -l, k, p) for (i, j, k, l), c in x.terms.items()}
    c1, c2 = x.central
    return DiffOp(n, terms, (c2, -c1), p)


# ---------------------------------------------------
# SHIFT AND HEISENBERG ELEMENTS
# ---------------------------------------------------
def _h_combination(n: int, coeffs, k: int, params: Params) -> DiffOp:
    morphism = theta(n, params)
    total = DiffOp.zero(n, params)
    for j, c in enumerate(coeffs):
        total = total + morphism.image(GenSym("h", j, k)).scale(c)
    return total


@lru_cache(maxsize=CACHE_SIZE)
def shift_element(n: int, i: int, k: int, params: Params = SYMBOLIC) -> Tuple[List, DiffOp]:
    """
    Coefficients c_j of h'_{i,k} = sum_j c_j h_{j,k} and its image, where
    [h'_{i,k}, e_{j,l}] = delta_{ij} e_{j,l+k}.
    """
    if k == 0:
        raise ZeroModeError("shift elements exist for nonzero modes only")
    i = i % n
    A = ScalarMatrix.of([[bbar(n, j, jj, k, params) for j in range(n)] for jj in range(n)])
    rhs = [params.one if jj == i else params.zero for jj in range(n)]
    coeffs = solve_linear(A, rhs)
    return coeffs, _h_combination(n, coeffs, k, params)


def shift_closed_form(n: int, i: int, k: int, params: Params = SYMBOLIC) -> DiffOp:
    """The diagonal formula for theta(h'_{i,k}); i runs over 0..n with 0 and n equivalent."""
    if k == 0:
        raise ZeroModeError("shift elements exist for nonzero modes only")
    i = n if i % n == 0 else i
    denom = params.dpow(n * k) - params.one
    upper = params.dpow((2 * n - i) * k) / denom
    lower = params.dpow((n - i) * k) / denom
    terms = {(m, m, k, 0): (upper if m <= i else lower) for m in range(1, n + 1)}
    return DiffOp(n, terms, params=params)


def ad_poly(n: int, i: int, k: int, target: DiffOp, sign: int = 1, params: Params = SYMBOLIC) -> DiffOp:
    """P_k(ad h'_{i,+-1}, ..., ad h'_{i,+-k}) applied to target; P_k is the Newton form of e_k."""
    if k < 1:
        raise ZeroModeError(f"ad_poly needs k >= 1, got {k}")
    shifts = [shift_element(n, i, sign * r, params)[1] for r in range(1, k + 1)]
    total = DiffOp.zero(n, params)
    for monom, coeff in p_poly(k).terms():
        value = target
        for r, e in enumerate(monom):
            for _ in range(e):
                value = d_bracket(shifts[r], value)
        total = total + value.scale(params.lift(to_fraction(coeff)))
    return total


def lift_operator(n: int, i: int, k: int, target: DiffOp, params: Params = SYMBOLIC) -> DiffOp:
    """L_{i-1;k} L_{i;-k} target, for 1 <= i <= n."""
    return ad_poly(n, i - 1, k, ad_poly(n, i, k, target, -1, params), 1, params)


@lru_cache(maxsize=CACHE_SIZE)
def heisenberg_coefficients(n: int, k: int, params: Params = SYMBOLIC) -> List:
    """c_0 = 1 and sum_i bbar(i, j; k) c_i = 0 for j = 1..n-1."""
    if k == 0:
        raise ZeroModeError("Heisenberg elements exist for nonzero modes only")
    A = ScalarMatrix.of([[bbar(n, i, j, k, params) for i in range(1, n)] for j in range(1, n)])
    rhs = [-bbar(n, 0, j, k, params) for j in range(1, n)]
    return [params.one] + solve_linear(A, rhs)


def heisenberg_v(n: int, k: int, params: Params = SYMBOLIC) -> DiffOp:
    return _h_combination(n, heisenberg_coefficients(n, k, params), k, params)


# ---------------------------------------------------
# COMMUTATIVE FAMILY
# ---------------------------------------------------
def a_matrix_diagonal(n: int, j: int, dk, params: Params = SYMBOLIC) -> list:
    """Diagonal of A_j evaluated at dk: dk everywhere, dk^{1-n} in position j."""
    return [params.power(dk, 1 - n) if m == j else dk for m in range(1, n + 1)]


def commutative_diagonal(n: int, i: int, k: int, params: Params = SYMBOLIC) -> list:
    """Diagonal of e_i(a_1 A_1(d^k), ..., a_n A_n(d^k)), entrywise."""
    dk = params.dpow(k)
    a = params.a_values(n)
    columns = [a_matrix_diagonal(n, j, dk, params) for j in range(1, n + 1)]
    diagonal = []
    for m in range(n):
        value = elementary(i, [a[j] * columns[j][m] for j in range(n)])
        diagonal.append(params.coerce(value))
    return diagonal


def commutative_gen(n: int, i: int, k: int, params: Params = SYMBOLIC) -> DiffOp:
    if k < 1:
        raise ZeroModeError(f"the commutative family lives in positive Z-degree, got k={k}")
    diagonal = commutative_diagonal(n, i, k, params)
    return DiffOp(n, {(m, m, 0, k): diagonal[m - 1] for m in range(1, n + 1)}, params=params)


def commutative_matrix(n: int, k: int, params: Params = SYMBOLIC) -> ScalarMatrix:
    """C(d^k): row i is the diagonal of commutative_gen(n, i, k)."""
    return ScalarMatrix.of([commutative_diagonal(n, i, k, params) for i in range(n)])
