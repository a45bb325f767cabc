# app/core/presentations.py
"""
Generator symbols, Lie expressions and the catalogs of defining relations
of the two classical-limit Lie algebras: the toroidal side (families e, f,
h, c with integer modes) and the Yangian side (x+, x-, xi with modes >= 0).

A relation is stored as LHS - RHS; it holds under a morphism when that
expression evaluates to zero.
"""
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from app.core.errors import BadSequence, ZeroModeError
from app.core.scalars import SYMBOLIC, Params, is_zero

U_FAMILIES = ("e", "f", "h", "c")
Y_FAMILIES = ("x+", "x-", "xi")


# ---------------------------------------------------
# GENERATORS AND EXPRESSIONS
# ---------------------------------------------------
@dataclass(frozen=True, order=True)
class GenSym:
    family: str
    i: Optional[int] = None
    idx: Optional[int] = None

    @property
    def side(self) -> str:
        return "difference" if self.family in U_FAMILIES else "differential"

    def __str__(self):
        if self.family == "c":
            return "c"
        return f"{self.family}[{self.i},{self.idx}]"


def gen(family: str, i: int, idx: int, n: int) -> "Gen":
    return Gen(GenSym(family, i % n, idx))


def central_gen() -> "Gen":
    return Gen(GenSym("c"))


class LieExpr:
    """Base node. Arithmetic builds new trees; nothing is simplified."""

    def __add__(self, other: "LieExpr") -> "LieExpr":
        return Sum((self, other))

    def __sub__(self, other: "LieExpr") -> "LieExpr":
        return Sum((self, Scaled(-1, other)))

    def __neg__(self) -> "LieExpr":
        return Scaled(-1, self)

    def __rmul__(self, coeff) -> "LieExpr":
        return Scaled(coeff, self)


@dataclass(frozen=True)
class Gen(LieExpr):
    sym: GenSym

    def __str__(self):
        return str(self.sym)


@dataclass(frozen=True)
class Scaled(LieExpr):
    coeff: object
    expr: LieExpr

    def __str__(self):
        return f"({self.coeff})*{self.expr}"


@dataclass(frozen=True)
class Sum(LieExpr):
    terms: Tuple[LieExpr, ...]

    def __str__(self):
        return " + ".join(str(t) for t in self.terms) if self.terms else "0"


@dataclass(frozen=True)
class Bracket(LieExpr):
    left: LieExpr
    right: LieExpr

    def __str__(self):
        return f"[{self.left}, {self.right}]"


ZERO_EXPR = Sum(())


def bracket(a: LieExpr, b: LieExpr) -> Bracket:
    return Bracket(a, b)


def linear(pairs: Iterable[Tuple[object, LieExpr]]) -> LieExpr:
    """sum of coeff * expr, dropping zero coefficients."""
    terms = tuple(Scaled(c, e) for c, e in pairs if not is_zero(c))
    return Sum(terms)


@dataclass
class RelationInstance:
    family: str
    indices: Dict[str, Union[int, str]]
    expr: LieExpr

    @property
    def key(self) -> Tuple:
        return (self.family, tuple(sorted((k, str(v)) for k, v in self.indices.items())))


# ---------------------------------------------------
# STRUCTURE CONSTANTS
# ---------------------------------------------------
def _delta(a: int, b: int, n: int) -> int:
    return 1 if (a - b) % n == 0 else 0


def cartan_a(n: int, i: int, j: int) -> int:
    return 2 * _delta(i, j, n) - _delta(i, j + 1, n) - _delta(i, j - 1, n)


def cartan_m(n: int, i: int, j: int) -> int:
    return _delta(i, j + 1, n) - _delta(i, j - 1, n)


def cartan_twist(n: int, i: int, j: int, k: int, params: Params = SYMBOLIC):
    """The coefficient in [h_{i,k}, e_{j,l}] = (.) e_{j,l+k}; k = 0 is allowed."""
    if n == 1:
        return 2 * params.one - params.dpow(k) - params.dpow(-k)
    if n == 2:
        return 2 * _delta(i, j, n) * params.one - (params.dpow(k) + params.dpow(-k)) * _delta(i, j + 1, n)
    return cartan_a(n, i, j) * params.dpow(-k * cartan_m(n, i, j))


def bbar(n: int, i: int, j: int, k: int, params: Params = SYMBOLIC):
    if k == 0:
        raise ZeroModeError("the constants are defined for nonzero modes only")
    return cartan_twist(n, i, j, k, params)


# ---------------------------------------------------
# COMMUTATOR BUILDERS
# ---------------------------------------------------
def nested_commutator(seq: Sequence[Union[GenSym, LieExpr]]) -> LieExpr:
    """[a1, [a2, [..., [a_{N-1}, a_N]...]]]."""
    if not seq:
        raise BadSequence("cannot nest an empty sequence")
    items = [Gen(s) if isinstance(s, GenSym) else s for s in seq]
    expr = items[-1]
    for item in reversed(items[:-1]):
        expr = Bracket(item, expr)
    return expr


def validate_cyclic(seq: Sequence[GenSym], n: int, family: str):
    """Consecutive residues i, i+1, ..., i-1 with zero modes in the interior."""
    if len(seq) < 2 or len(seq) % n:
        raise BadSequence(f"a cyclic commutator needs a positive multiple of {n} entries, at least 2")
    start = seq[0].i
    for p, sym in enumerate(seq):
        if sym.family != family or sym.i != (start + p) % n:
            raise BadSequence(f"entry {p} ({sym}) breaks the cyclic template")
        if 0 < p < len(seq) - 1 and sym.idx != 0:
            raise BadSequence(f"interior entry {p} ({sym}) must have mode 0")


def _cyclic(family: str, n: int, i: int, l: int, a: int, b: int) -> LieExpr:
    length = l * n
    if l < 1 or length < 2:
        raise BadSequence(f"template length {length} is too short")
    seq = [GenSym(family, (i + p) % n, 0) for p in range(length)]
    seq[0] = GenSym(family, i % n, a)
    seq[-1] = GenSym(family, (i - 1) % n, b)
    validate_cyclic(seq, n, family)
    return nested_commutator(seq)


def v_comm(n: int, i: int, l: int, a: int, b: int) -> LieExpr:
    return _cyclic("e", n, i, l, a, b)


def w_comm(n: int, i: int, l: int, a: int, b: int) -> LieExpr:
    if a < 0 or b < 0:
        raise BadSequence("modes of x+ generators are nonnegative")
    return _cyclic("x+", n, i, l, a, b)


def ladder_elements(n: int, params: Params = SYMBOLIC) -> Tuple[LieExpr, LieExpr]:
    """H3 and H4 with [H3, x+-_{i,r}] = +-x+-_{i,r+1} and [H4, x+-_{i,r}] = +-x+-_{i,r+2}."""
    b2 = params.beta * params.beta

    def total(r):
        return Sum(tuple(gen("xi", i, r, n) for i in range(n)))

    h3 = Scaled(-params.one / (6 * b2), total(3))
    h4 = Scaled(-params.one / (12 * b2), total(4)) + Scaled(params.lift("1/12"), total(2))
    return h3, h4


# ---------------------------------------------------
# EXPANSION AND SUBSTITUTION
# ---------------------------------------------------
def expand(expr: LieExpr) -> Dict[object, object]:
    """Multilinear expansion into bracket words (nested tuples of GenSym) -> coefficient."""
    if isinstance(expr, Gen):
        return {expr.sym: 1}
    if isinstance(expr, Scaled):
        return {w: expr.coeff * c for w, c in expand(expr.expr).items()}
    if isinstance(expr, Sum):
        out: Dict[object, object] = {}
        for term in expr.terms:
            for w, c in expand(term).items():
                out[w] = out[w] + c if w in out else c
        return {w: c for w, c in out.items() if not is_zero(c)}
    if isinstance(expr, Bracket):
        out = {}
        for (wl, cl), (wr, cr) in product(expand(expr.left).items(), expand(expr.right).items()):
            w = (wl, wr)
            out[w] = out[w] + cl * cr if w in out else cl * cr
        return {w: c for w, c in out.items() if not is_zero(c)}
    raise TypeError(f"unknown expression node {type(expr).__name__}")


def substitute(expr: LieExpr, mapping: Callable[[GenSym], LieExpr]) -> LieExpr:
    if isinstance(expr, Gen):
        return mapping(expr.sym)
    if isinstance(expr, Scaled):
        return Scaled(expr.coeff, substitute(expr.expr, mapping))
    if isinstance(expr, Sum):
        return Sum(tuple(substitute(t, mapping) for t in expr.terms))
    if isinstance(expr, Bracket):
        return Bracket(substitute(expr.left, mapping), substitute(expr.right, mapping))
    raise TypeError(f"unknown expression node {type(expr).__name__}")


def proportional(a: Dict[object, object], b: Dict[object, object]):
    """The scalar lam with a == lam * b, or None."""
    if not b:
        return 0 if not a else None
    pivot = next(iter(b))
    if pivot not in a:
        return None
    lam = a[pivot] / b[pivot]
    keys = set(a) | set(b)
    if all(is_zero(a.get(w, 0) - lam * b.get(w, 0)) for w in keys):
        return lam
    return None


# ---------------------------------------------------
# TOROIDAL RELATIONS (u1)-(u7.2)
# ---------------------------------------------------
def _sym_sum(family, i, ks, tail, n, nest) -> LieExpr:
    return Sum(tuple(nest([gen(family, i, k, n) for k in perm], tail) for perm in permutations(ks)))


def _nest(heads, tail):
    return nested_commutator(list(heads) + [tail])


def u_relations(n: int, K: int, params: Params = SYMBOLIC) -> List[RelationInstance]:
    W = range(-K, K + 1)
    I = range(n)
    c = central_gen()
    one = params.one
    out: List[RelationInstance] = []

    # 1) Cartan-Cartan
    for i, j, k, l in product(I, I, W, W):
        expr = bracket(gen("h", i, k, n), gen("h", j, l, n))
        if k == -l:
            expr = expr - Scaled(k * cartan_twist(n, i, j, k, params), c)
        out.append(RelationInstance("u1", dict(i=i, j=j, k=k, l=l), expr))

    # 2) mode-exchange relations for e (u2) and f (u3)
    for tag, fam in (("u2", "e"), ("u3", "f")):
        def br(a, p, b, q):
            return bracket(gen(fam, a, p, n), gen(fam, b, q, n))

        if n > 2:
            for i, j, k, l in product(I, I, W, W):
                expr = br(i, k + 1, j, l) - Scaled(params.dpow(-cartan_m(n, i, j)), br(i, k, j, l + 1))
                out.append(RelationInstance(tag, dict(i=i, j=j, k=k, l=l), expr))
        elif n == 2:
            ddi = params.d + one / params.d
            for i, k, l in product(I, W, W):
                out.append(RelationInstance(
                    tag, dict(branch="same", i=i, k=k, l=l),
                    br(i, k + 1, i, l) - br(i, k, i, l + 1),
                ))
                out.append(RelationInstance(
                    tag, dict(branch="next", i=i, k=k, l=l),
                    linear([(one, br(i, k + 2, i + 1, l)), (-ddi, br(i, k + 1, i + 1, l + 1)),
                            (one, br(i, k, i + 1, l + 2))]),
                ))
        else:
            c3 = one + params.d + one / params.d
            for k, l in product(W, W):
                out.append(RelationInstance(
                    tag, dict(k=k, l=l),
                    linear([(one, br(0, k + 3, 0, l)), (-c3, br(0, k + 2, 0, l + 1)),
                            (c3, br(0, k + 1, 0, l + 2)), (-one, br(0, k, 0, l + 3))]),
                ))

    # 3) e-f relation
    for i, j, k, l in product(I, I, W, W):
        expr = bracket(gen("e", i, k, n), gen("f", j, l, n))
        if i == j:
            expr = expr - gen("h", i, k + l, n)
            if k == -l and k:
                expr = expr - Scaled(k * one, c)
        out.append(RelationInstance("u4", dict(i=i, j=j, k=k, l=l), expr))

    # 4) Cartan action
    for tag, fam, sign in (("u5", "e", 1), ("u6", "f", -1)):
        for i, j, k, l in product(I, I, W, W):
            expr = bracket(gen("h", i, k, n), gen(fam, j, l, n)) - Scaled(
                sign * cartan_twist(n, i, j, k, params), gen(fam, j, l + k, n)
            )
            out.append(RelationInstance(tag, dict(i=i, j=j, k=k, l=l), expr))

    # 5) Serre-type relations
    for tag, fam in (("u7.1", "e"), ("u7.2", "f")):
        if n > 2:
            for i, side, k1, k2, l in product(I, (1, -1), W, W, W):
                tail = gen(fam, i + side, l, n)
                out.append(RelationInstance(
                    tag, dict(branch="serre", i=i, side=side, k1=k1, k2=k2, l=l),
                    _sym_sum(fam, i, (k1, k2), tail, n, _nest),
                ))
            for i, j, k, l in product(I, I, W, W):
                if (j - i) % n in (0, 1, n - 1):
                    continue
                out.append(RelationInstance(
                    tag, dict(branch="distant", i=i, j=j, k=k, l=l),
                    bracket(gen(fam, i, k, n), gen(fam, j, l, n)),
                ))
        elif n == 2:
            for i, k1, k2, k3, l in product(I, W, W, W, W):
                tail = gen(fam, i + 1, l, n)
                out.append(RelationInstance(
                    tag, dict(i=i, k1=k1, k2=k2, k3=k3, l=l),
                    _sym_sum(fam, i, (k1, k2, k3), tail, n, _nest),
                ))
        else:
            for k1, k2, k3 in product(W, W, W):
                terms = tuple(
                    nested_commutator([gen(fam, 0, a, 1), gen(fam, 0, b + 1, 1), gen(fam, 0, cc - 1, 1)])
                    for a, b, cc in permutations((k1, k2, k3))
                )
                out.append(RelationInstance(tag, dict(k1=k1, k2=k2, k3=k3), Sum(terms)))
    return out


# ---------------------------------------------------
# YANGIAN RELATIONS (y1)-(y6)
# ---------------------------------------------------
SIGNS = (("+", 1), ("-", -1))


def y_relations(n: int, R: int, params: Params = SYMBOLIC) -> List[RelationInstance]:
    W = range(0, R + 1)
    I = range(n)
    one = params.one
    beta = params.beta
    b2 = beta * beta
    out: List[RelationInstance] = []

    # 1) Cartan part is abelian
    for i, j, r, s in product(I, I, W, W):
        out.append(RelationInstance("y1", dict(i=i, j=j, r=r, s=s),
                                    bracket(gen("xi", i, r, n), gen("xi", j, s, n))))

    # 2) x+ with x-
    for i, j, r, s in product(I, I, W, W):
        expr = bracket(gen("x+", i, r, n), gen("x-", j, s, n))
        if i == j:
            expr = expr - gen("xi", i, r + s, n)
        out.append(RelationInstance("y2", dict(i=i, j=j, r=r, s=s), expr))

    # 3) mode-exchange relations: (y3) between x's, (y4) with xi on the left
    for tag, left in (("y3", None), ("y4", "xi")):
        for sign, _ in SIGNS:
            fam = "x" + sign
            lfam = left or fam

            def br(a, p, b, q):
                return bracket(gen(lfam, a, p, n), gen(fam, b, q, n))

            if n > 2:
                for i, j, r, s in product(I, I, W, W):
                    expr = br(i, r + 1, j, s) - br(i, r, j, s + 1) + Scaled(
                        cartan_m(n, i, j) * beta, br(i, r, j, s)
                    )
                    out.append(RelationInstance(tag, dict(sign=sign, i=i, j=j, r=r, s=s), expr))
            elif n == 2:
                for i, r, s in product(I, W, W):
                    out.append(RelationInstance(
                        tag, dict(branch="same", sign=sign, i=i, r=r, s=s),
                        br(i, r + 1, i, s) - br(i, r, i, s + 1),
                    ))
                    out.append(RelationInstance(
                        tag, dict(branch="next", sign=sign, i=i, r=r, s=s),
                        linear([(one, br(i, r + 2, i + 1, s)), (-2 * one, br(i, r + 1, i + 1, s + 1)),
                                (one, br(i, r, i + 1, s + 2)), (-b2, br(i, r, i + 1, s))]),
                    ))
            else:
                for r, s in product(W, W):
                    out.append(RelationInstance(
                        tag, dict(sign=sign, r=r, s=s),
                        linear([(one, br(0, r + 3, 0, s)), (-3 * one, br(0, r + 2, 0, s + 1)),
                                (3 * one, br(0, r + 1, 0, s + 2)), (-one, br(0, r, 0, s + 3)),
                                (-b2, br(0, r + 1, 0, s)), (b2, br(0, r, 0, s + 1))]),
                    ))

    # 4) Cartan action
    for sign, eps in SIGNS:
        fam = "x" + sign
        if n >= 2:
            for i, j, s in product(I, I, W):
                expr = bracket(gen("xi", i, 0, n), gen(fam, j, s, n)) - Scaled(
                    eps * cartan_a(n, i, j) * one, gen(fam, j, s, n)
                )
                out.append(RelationInstance("y5", dict(branch="cartan", sign=sign, i=i, j=j, s=s), expr))
        if n == 2:
            for i, s in product(I, W):
                expr = bracket(gen("xi", i, 1, n), gen(fam, i + 1, s, n)) + Scaled(
                    2 * eps * one, gen(fam, i + 1, s + 1, n)
                )
                out.append(RelationInstance("y5", dict(branch="shift", sign=sign, i=i, s=s), expr))
        if n == 1:
            for s in W:
                x = gen(fam, 0, s, 1)
                out.append(RelationInstance("y5", dict(branch="zero", sign=sign, s=s),
                                            bracket(gen("xi", 0, 0, 1), x)))
                out.append(RelationInstance("y5", dict(branch="one", sign=sign, s=s),
                                            bracket(gen("xi", 0, 1, 1), x)))
                out.append(RelationInstance("y5", dict(branch="two", sign=sign, s=s),
                                            bracket(gen("xi", 0, 2, 1), x) + Scaled(2 * eps * b2, x)))

    # 5) Serre-type relations
    for sign, _ in SIGNS:
        fam = "x" + sign
        if n > 2:
            for i, side, r1, r2, s in product(I, (1, -1), W, W, W):
                tail = gen(fam, i + side, s, n)
                out.append(RelationInstance(
                    "y6", dict(branch="serre", sign=sign, i=i, side=side, r1=r1, r2=r2, s=s),
                    _sym_sum(fam, i, (r1, r2), tail, n, _nest),
                ))
            for i, j, r, s in product(I, I, W, W):
                if (j - i) % n in (0, 1, n - 1):
                    continue
                out.append(RelationInstance(
                    "y6", dict(branch="distant", sign=sign, i=i, j=j, r=r, s=s),
                    bracket(gen(fam, i, r, n), gen(fam, j, s, n)),
                ))
        elif n == 2:
            for i, r1, r2, r3, s in product(I, W, W, W, W):
                tail = gen(fam, i + 1, s, n)
                out.append(RelationInstance(
                    "y6", dict(sign=sign, i=i, r1=r1, r2=r2, r3=r3, s=s),
                    _sym_sum(fam, i, (r1, r2, r3), tail, n, _nest),
                ))
        else:
            for r1, r2, r3 in product(W, W, W):
                terms = tuple(
                    nested_commutator([gen(fam, 0, a, 1), gen(fam, 0, b, 1), gen(fam, 0, cc + 1, 1)])
                    for a, b, cc in permutations((r1, r2, r3))
                )
                out.append(RelationInstance("y6", dict(sign=sign, r1=r1, r2=r2, r3=r3), Sum(terms)))
    return out


def relation_families(instances: Iterable[RelationInstance]) -> List[str]:
    return sorted({inst.family for inst in instances})


def rescale_modes(sym: GenSym, params: Params = SYMBOLIC) -> LieExpr:
    """x_{i,r} -> beta^r x_{i,r}, xi_{i,r} -> beta^r xi_{i,r}."""
    return Scaled(params.beta ** sym.idx, Gen(sym))
