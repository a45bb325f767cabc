# app/core/scalars.py
"""
Exact coefficients: the rational-function field Q(d, beta, a1, ..., am)
and linear algebra over it.

Every coefficient in the package is either an element of that field
(exact mode) or a plain rational after the parameters have been
substituted (random mode). Both kinds support the same arithmetic, so
the operator algebras never need to know which one they carry.
"""
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence, Union

from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, field
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex

from app.config import settings
from app.core.errors import DivisionByZero, MissingParameter, PoleError, SingularMatrix

# A Scalar is a sympy FracElement (exact mode) or a QQ element (random mode).
Scalar = object
Rational = Union[int, Fraction, str]

PARAMETER_NAMES = ("d", "beta") + tuple(
    f"a{i}" for i in range(1, settings.VERIFY_SYMBOLIC_A + 1)
)

FIELD, *_GENERATORS = field(",".join(PARAMETER_NAMES), QQ, grlex)
GENERATORS = dict(zip(PARAMETER_NAMES, _GENERATORS))


def to_fraction(value) -> Fraction:
    """Convert an exact rational of any flavour (int, Fraction, QQ element) to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    return Fraction(int(value.numerator), int(value.denominator))


def _qq(value: Rational):
    q = to_fraction(value)
    return QQ(q.numerator, q.denominator)


# ---------------------------------------------------
# PARAMETER BUNDLES
# ---------------------------------------------------
@dataclass(frozen=True)
class Params:
    """Values of d, beta and the a-parameters, all in one coefficient domain."""

    d: Scalar
    beta: Scalar
    a: tuple
    one: Scalar
    exact: bool

    @classmethod
    def symbolic(cls) -> "Params":
        a = tuple(GENERATORS[f"a{i}"] for i in range(1, settings.VERIFY_SYMBOLIC_A + 1))
        return cls(d=GENERATORS["d"], beta=GENERATORS["beta"], a=a, one=FIELD.one, exact=True)

    @classmethod
    def numeric(cls, assignment) -> "Params":
        """Exact rational values taken from a ParamAssignment."""
        return cls(
            d=_qq(assignment.d),
            beta=_qq(assignment.beta),
            a=tuple(_qq(v) for v in assignment.a),
            one=QQ(1),
            exact=False,
        )

    @property
    def zero(self) -> Scalar:
        return self.one - self.one

    @property
    def domain(self):
        return FIELD.to_domain() if self.exact else QQ

    def lift(self, value) -> Scalar:
        return self.one * _qq(value)

    def coerce(self, value) -> Scalar:
        """Plain Python numbers are lifted; domain elements pass through."""
        if isinstance(value, (int, Fraction)):
            return self.lift(value)
        return value

    def dpow(self, e: int) -> Scalar:
        """d**e for any integer e."""
        return self.d ** e if e >= 0 else self.one / self.d ** (-e)

    def power(self, base: Scalar, e: int) -> Scalar:
        """base**e with 0**0 = 1; sympy field elements refuse 0**0."""
        if e == 0:
            return self.one
        return base ** e if e > 0 else self.one / base ** (-e)

    def a_values(self, n: int) -> tuple:
        """(a_1, ..., a_n) with the normalization a_n = 1."""
        if n - 1 > len(self.a):
            raise MissingParameter(f"need {n - 1} a-parameters, only {len(self.a)} available")
        return tuple(self.a[: n - 1]) + (self.one,)

    def specialize(self, values: Mapping[str, Rational]) -> "Params":
        """Replace some parameters by constants (e.g. {"a1": 1})."""
        changes = {}
        a = list(self.a)
        for name, value in values.items():
            if name in ("d", "beta"):
                changes[name] = self.lift(value)
            elif name.startswith("a") and name[1:].isdigit() and 1 <= int(name[1:]) <= len(a):
                a[int(name[1:]) - 1] = self.lift(value)
            else:
                raise MissingParameter(f"unknown parameter '{name}'")
        return replace(self, a=tuple(a), **changes)

    def generic_a(self, n: int) -> bool:
        values = self.a_values(n)
        return all(
            not is_zero(values[i] - values[j]) for i in range(n) for j in range(i + 1, n)
        )


SYMBOLIC = Params.symbolic()


def random_assignment(seed: int, point: int, attempt: int, bound: int = None):
    """Deterministic random parameter point for randomized verification."""
    from app.schemas import ParamAssignment

    bound = bound or settings.VERIFY_RANDOM_BOUND
    rng = random.Random(f"{seed}:{point}:{attempt}")

    def draw() -> Fraction:
        den = 0
        while den == 0:
            den = rng.randint(-bound, bound)
        return Fraction(rng.randint(-bound, bound), den)

    d = draw()
    while d in (0, 1, -1):
        d = draw()
    beta = draw()
    while beta == 0:
        beta = draw()
    a = []
    while len(a) < settings.VERIFY_SYMBOLIC_A:
        value = draw()
        if value != 0 and value != 1 and value not in a:
            a.append(value)
    return ParamAssignment(d=d, beta=beta, a=a)


# ---------------------------------------------------
# FIELD OPERATIONS
# ---------------------------------------------------
def arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if is_zero(b):
            raise DivisionByZero("division by the zero rational function")
        return a / b
    raise ValueError(f"unknown operation '{op}'")


def is_zero(a: Scalar) -> bool:
    return not a


def eval_at(a: Scalar, assignment: Mapping[str, Rational]) -> Fraction:
    """Value of a symbolic scalar at exact rational parameter values."""
    if not isinstance(a, FracElement):
        return to_fraction(a)
    values = {name: to_fraction(v) for name, v in assignment.items()}

    def evaluate(poly) -> Fraction:
        total = Fraction(0)
        for monom, coeff in poly.terms():
            term = to_fraction(coeff)
            for name, exp in zip(PARAMETER_NAMES, monom):
                if exp:
                    if name not in values:
                        raise MissingParameter(f"no value assigned to '{name}'")
                    term *= values[name] ** exp
            total += term
        return total

    denominator = evaluate(a.denom)
    if denominator == 0:
        raise PoleError(f"denominator of {a} vanishes at {assignment}")
    return evaluate(a.numer) / denominator


# ---------------------------------------------------
# LINEAR ALGEBRA
# ---------------------------------------------------
@dataclass(frozen=True)
class ScalarMatrix:
    entries: tuple

    @classmethod
    def of(cls, rows: Sequence[Sequence[Scalar]]) -> "ScalarMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(tuple(zip(*self.entries)))


def _domain_of(values) -> object:
    for value in values:
        if isinstance(value, FracElement):
            return value.field.to_domain()
    return QQ


def _to_domain_matrix(A: ScalarMatrix, domain) -> DomainMatrix:
    rows = [[domain.convert(x) for x in row] for row in A.entries]
    return DomainMatrix(rows, (A.rows, A.cols), domain)


def rank_det(A: ScalarMatrix):
    """Rank over the coefficient field, and the (fraction-free) determinant for square input."""
    if A.rows == 0 or A.cols == 0:
        return 0, (FIELD.one if A.rows == A.cols else None)
    domain = _domain_of(x for row in A.entries for x in row)
    M = _to_domain_matrix(A, domain)
    det = M.det() if A.rows == A.cols else None
    return M.rank(), det


def solve_linear(A: ScalarMatrix, b: Sequence[Scalar]) -> list:
    if A.rows != A.cols or len(b) != A.rows:
        raise SingularMatrix("solve_linear expects a square system")
    if A.rows == 0:
        return []
    domain = _domain_of([x for row in A.entries for x in row] + list(b))
    M = _to_domain_matrix(A, domain)
    if is_zero(M.det()):
        raise SingularMatrix("the coefficient matrix has zero determinant")
    rhs = DomainMatrix([[domain.convert(x)] for x in b], (len(b), 1), domain)
    solution = M.lu_solve(rhs)
    return [row[0] for row in solution.to_list()]
