# app/core/operators.py
"""
Shared storage for matrix-valued operator elements.

An element is a finite map (row, col, a, l) -> coefficient, where the
operator part is a normal-ordered monomial with exponent `a` on the left
generator (D or the derivation) and `l` on the right one (Z or x), plus a
fixed tuple of central coordinates. Zero coefficients are never stored.
"""
from collections import defaultdict
from typing import Dict, Iterable, Tuple

from app.core.errors import SizeMismatch
from app.core.scalars import SYMBOLIC, Params, is_zero

Key = Tuple[int, int, int, int]


class OperatorElement:
    CENTRALS: Tuple[str, ...] = ()
    LEFT = "A"
    RIGHT = "B"

    __slots__ = ("n", "terms", "central", "params")

    def __init__(self, n: int, terms=None, central=None, params: Params = SYMBOLIC):
        if n < 1:
            raise SizeMismatch(f"matrix size must be positive, got {n}")
        self.n = n
        self.params = params
        self.terms: Dict[Key, object] = {
            key: c for key, c in (terms or {}).items() if not is_zero(c)
        }
        central = tuple(central or ())
        if len(central) < len(self.CENTRALS):
            central = central + (0,) * (len(self.CENTRALS) - len(central))
        self.central = central

    # -----------------------------
    # CONSTRUCTORS
    # -----------------------------
    @classmethod
    def zero(cls, n: int, params: Params = SYMBOLIC):
        return cls(n, params=params)

    @classmethod
    def monomial(cls, n: int, i: int, j: int, a: int, l: int, coeff=1, params: Params = SYMBOLIC):
        if not (1 <= i <= n and 1 <= j <= n):
            raise SizeMismatch(f"matrix unit E[{i},{j}] is outside size {n}")
        return cls(n, {(i, j, a, l): params.coerce(coeff)}, params=params)

    @classmethod
    def central_element(cls, n: int, which: str, coeff=1, params: Params = SYMBOLIC):
        central = [0] * len(cls.CENTRALS)
        central[cls.CENTRALS.index(which)] = params.coerce(coeff)
        return cls(n, central=central, params=params)

    @classmethod
    def combine(cls, n: int, pieces: Iterable[Tuple[Key, object]], params: Params = SYMBOLIC, central=None):
        """Build an element from (key, coeff) pairs, summing repeated keys."""
        acc = defaultdict(lambda: params.zero)
        for key, c in pieces:
            acc[key] = acc[key] + c
        return cls(n, acc, central, params)

    def _like(self, terms, central=None):
        return type(self)(self.n, terms, central, self.params)

    # -----------------------------
    # LINEAR STRUCTURE
    # -----------------------------
    def _check(self, other: "OperatorElement"):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n:
            raise SizeMismatch(f"matrix sizes differ: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms[key] + c if key in terms else c
        central = tuple(a + b for a, b in zip(self.central, other.central))
        return self._like(terms, central)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()}, tuple(-c for c in self.central))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        coeff = self.params.coerce(coeff)
        if is_zero(coeff):
            return self._like({})
        return self._like(
            {k: coeff * c for k, c in self.terms.items()},
            tuple(coeff * c for c in self.central),
        )

    def __rmul__(self, coeff):
        return self.scale(coeff)

    def without_central(self):
        return self._like(self.terms)

    def is_zero(self) -> bool:
        return not self.terms and all(is_zero(c) for c in self.central)

    def __eq__(self, other):
        if not isinstance(other, OperatorElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # -----------------------------
    # MATRIX VIEWS
    # -----------------------------
    def coefficient(self, i: int, j: int, a: int, l: int):
        return self.terms.get((i, j, a, l), self.params.zero)

    def matrix_at(self, a: int, l: int) -> Dict[Tuple[int, int], object]:
        return {(i, j): c for (i, j, aa, ll), c in self.terms.items() if aa == a and ll == l}

    def trace_at(self, a: int, l: int):
        total = self.params.zero
        for m in range(1, self.n + 1):
            total = total + self.coefficient(m, m, a, l)
        return total

    def exponents(self):
        return sorted({(a, l) for (_, _, a, l) in self.terms})

    # -----------------------------
    # RENDERING
    # -----------------------------
    def render(self) -> str:
        """Canonical text form: terms in key order, then nonzero centrals."""
        parts = []
        for (i, j, a, l) in sorted(self.terms):
            parts.append(f"({self.terms[(i, j, a, l)]})*E[{i},{j}]*{self.LEFT}^{a}*{self.RIGHT}^{l}")
        for name, c in zip(self.CENTRALS, self.central):
            if not is_zero(c):
                parts.append(f"({c})*{name}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}: {self.render()})"
