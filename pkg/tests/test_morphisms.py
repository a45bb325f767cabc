from itertools import product

import pytest

from app.core.derops import DerOp, shifted_power
from app.core.diffops import DiffOp, d_bracket, identity_op
from app.core.errors import IllegalGenerator, ZeroModeError
from app.core.morphisms import (
    Morphism,
    a_matrix_diagonal,
    ad_poly,
    commutative_gen,
    commutative_matrix,
    heisenberg_coefficients,
    heisenberg_v,
    lift_operator,
    miki_bar,
    miki_bar_inverse,
    mutated_theta,
    shift_closed_form,
    shift_element,
    theta,
    vartheta,
)
from app.core.presentations import GenSym, bbar, bracket, gen, u_relations, y_relations
from app.core.scalars import is_zero, rank_det


# =========================================================
# GENERATOR IMAGES
# =========================================================
def test_theta_images(sym):
    morphism = theta(3, sym)
    t = sym.dpow(3)
    assert morphism.image(GenSym("e", 0, 2)) == DiffOp.monomial(3, 3, 1, 2, 1, params=sym)
    assert morphism.image(GenSym("f", 0, 1)) == DiffOp.monomial(3, 1, 3, 1, -1, t, params=sym)
    h00 = DiffOp(3, {(3, 3, 0, 0): sym.one, (1, 1, 0, 0): -sym.one}, (sym.one, sym.zero), sym)
    assert morphism.image(GenSym("h", 0, 0)) == h00
    assert morphism.image(GenSym("e", 1, 1)) == DiffOp.monomial(3, 1, 2, 1, 0, sym.dpow(2), params=sym)
    assert morphism.image(GenSym("c")) == DiffOp.central_element(3, "c2", params=sym)


def test_vartheta_images(sym):
    morphism = vartheta(2, sym)
    s = 2 * sym.beta
    assert morphism.image(GenSym("x+", 0, 1)) == DerOp.monomial(2, 2, 1, 1, 1, params=sym)
    assert morphism.image(GenSym("x-", 0, 1)) == shifted_power(2, 1, 2, 1, s, -1, sym)
    xi0 = (
        DerOp.monomial(2, 2, 2, 0, 0, params=sym)
        - DerOp.monomial(2, 1, 1, 0, 0, params=sym)
        + DerOp.central_element(2, "cD", params=sym)
    )
    assert morphism.image(GenSym("xi", 0, 0)) == xi0
    assert morphism.image(GenSym("x+", 1, 2)) == shifted_power(2, 1, 2, 2, sym.beta, 0, sym)


def test_illegal_generators(sym):
    with pytest.raises(IllegalGenerator):
        theta(2, sym).image(GenSym("x+", 0, 0))
    with pytest.raises(IllegalGenerator):
        theta(2, sym).image(GenSym("e", 2, 0))
    with pytest.raises(IllegalGenerator):
        vartheta(2, sym).image(GenSym("x+", 0, -1))
    with pytest.raises(IllegalGenerator):
        vartheta(2, sym).image(GenSym("c"))
    with pytest.raises(ValueError):
        Morphism(2, "difference", sym, mutation="nonsense")


def test_evaluate_memoizes_brackets(num):
    morphism = theta(2, num)
    expr = bracket(gen("e", 0, 1, 2), gen("f", 0, -1, 2))
    first = morphism.evaluate(expr)
    assert morphism.evaluate(expr) is first


# =========================================================
# DEFINING RELATIONS
# =========================================================
@pytest.mark.parametrize("n", [1, 2, 3])
def test_toroidal_relations_hold(n, num):
    morphism = theta(n, num)
    failures = [inst.key for inst in u_relations(n, 1, num) if not morphism.evaluate(inst.expr).is_zero()]
    assert failures == []


def test_toroidal_relations_hold_symbolically(sym):
    morphism = theta(2, sym)
    for inst in u_relations(2, 1, sym):
        if inst.family in ("u1", "u4", "u5", "u6"):
            assert morphism.evaluate(inst.expr).is_zero(), inst.key


@pytest.mark.parametrize("n", [1, 2, 3])
def test_yangian_relations_hold(n, num):
    morphism = vartheta(n, num)
    failures = [inst.key for inst in y_relations(n, 1, num) if not morphism.evaluate(inst.expr).is_zero()]
    assert failures == []


def test_untwisted_theta_breaks_the_cartan_action(sym):
    good, bad = theta(2, sym), mutated_theta(2, sym)
    broken = [
        inst.key
        for inst in u_relations(2, 1, sym)
        if inst.family == "u5" and not bad.evaluate(inst.expr).is_zero()
    ]
    assert ("u5", (("i", "0"), ("j", "1"), ("k", "1"), ("l", "0"))) in broken
    assert all(good.evaluate(inst.expr).is_zero() for inst in u_relations(2, 1, sym) if inst.family == "u5")


# =========================================================
# MIKI ROTATION
# =========================================================
def _monomials(n, params, reach=1):
    W = range(-reach, reach + 1)
    return [DiffOp.monomial(n, i, j, k, l, params=params) for i, j, k, l in product(range(1, n + 1), range(1, n + 1), W, W)]


@pytest.mark.parametrize("n", [1, 2])
def test_miki_preserves_brackets(n, num):
    monomials = _monomials(n, num)
    for x, y in product(monomials, monomials):
        assert miki_bar(d_bracket(x, y)) == d_bracket(miki_bar(x), miki_bar(y))


def test_miki_on_centrals_and_inverse(sym):
    c1 = DiffOp.central_element(2, "c1", params=sym)
    c2 = DiffOp.central_element(2, "c2", params=sym)
    assert miki_bar(c1) == c2
    assert miki_bar(c2) == -c1
    for x in _monomials(2, sym):
        assert miki_bar_inverse(miki_bar(x)) == x
        assert miki_bar(miki_bar_inverse(x)) == x


def test_miki_generator_images(sym):
    n = 3
    source = DiffOp.monomial(n, n, 1, 0, 1, params=sym)
    assert miki_bar(source) == DiffOp.monomial(n, n, 1, 1, 0, sym.power(-sym.d, n), params=sym)
    assert miki_bar(DiffOp.monomial(n, 1, 2, 0, 0, params=sym)) == DiffOp.monomial(n, 1, 2, 0, 0, params=sym)


# =========================================================
# SHIFT AND HEISENBERG ELEMENTS
# =========================================================
@pytest.mark.parametrize("n,k", [(1, 1), (1, -2), (2, 1), (2, -1), (3, 2), (3, -1)])
def test_shift_elements_have_a_closed_form(n, k, sym):
    for i in range(n):
        _, image = shift_element(n, i, k, sym)
        assert image == shift_closed_form(n, i, k, sym)
    assert shift_closed_form(n, 0, k, sym) == shift_closed_form(n, n, k, sym)


@pytest.mark.parametrize("n", [2, 3])
def test_shift_elements_act_on_one_node(n, num):
    morphism = theta(n, num)
    for i, j, k in product(range(n), range(n), (-1, 1, 2)):
        _, image = shift_element(n, i, k, num)
        value = d_bracket(image, morphism.image(GenSym("e", j, 0)))
        expected = morphism.image(GenSym("e", j, k)) if i == j else DiffOp.zero(n, num)
        assert value == expected


def test_shift_coefficients_solve_the_system(sym):
    n, i, k = 3, 1, 1
    coeffs, _ = shift_element(n, i, k, sym)
    for jj in range(n):
        total = sum((bbar(n, j, jj, k, sym) * coeffs[j] for j in range(n)), sym.zero)
        assert total == (sym.one if jj == i else sym.zero)


def test_zero_modes_are_rejected(sym):
    with pytest.raises(ZeroModeError):
        shift_element(2, 0, 0, sym)
    with pytest.raises(ZeroModeError):
        shift_closed_form(2, 0, 0, sym)
    with pytest.raises(ZeroModeError):
        heisenberg_coefficients(2, 0, sym)
    with pytest.raises(ZeroModeError):
        commutative_gen(2, 0, 0, sym)
    with pytest.raises(ZeroModeError):
        ad_poly(2, 0, 0, DiffOp.zero(2, sym), 1, sym)


@pytest.mark.parametrize("n,k", [(1, 1), (2, 1), (2, -2), (3, 1)])
def test_heisenberg_element_is_a_multiple_of_identity(n, k, sym):
    assert heisenberg_coefficients(n, k, sym)[0] == sym.one
    expected = identity_op(n, k, 0, (sym.one - sym.dpow(n * k)) / n, sym)
    assert heisenberg_v(n, k, sym) == expected


def test_heisenberg_element_commutes_with_the_vertical_part(num):
    n = 3
    morphism = theta(n, num)
    v = heisenberg_v(n, 1, num)
    for family, i, k in product(("e", "f", "h"), (1, 2), (-1, 0, 1)):
        assert d_bracket(v, morphism.image(GenSym(family, i, k))).is_zero()


# =========================================================
# COMMUTATIVE FAMILY
# =========================================================
@pytest.mark.parametrize("n", [2, 3])
def test_commutative_family(n, sym):
    gens = [commutative_gen(n, i, k, sym) for i in range(n) for k in (1, 2)]
    for x, y in product(gens, gens):
        assert d_bracket(x, y).is_zero()
    rank, det = rank_det(commutative_matrix(n, 1, sym))
    assert rank == n
    assert not is_zero(det)


def test_commutative_family_degenerates_with_equal_parameters(sym):
    special = sym.specialize({"a1": 1})
    rank, det = rank_det(commutative_matrix(2, 1, special))
    assert rank < 2
    assert is_zero(det)


def test_commutative_constant_term(sym):
    # e_0 of anything is 1, so i = 0 gives the identity
    assert commutative_gen(3, 0, 2, sym) == identity_op(3, 0, 2, 1, sym)


@pytest.mark.parametrize("n,k", [(1, 1), (2, 1), (2, 2), (3, 1)])
def test_lift_operators_produce_diagonal_matrices(n, k, num):
    start = identity_op(n, 0, k, 1, num)
    for i in range(1, n + 1):
        diagonal = a_matrix_diagonal(n, i, num.dpow(k), num)
        expected = DiffOp(n, {(m, m, 0, k): diagonal[m - 1] for m in range(1, n + 1)}, params=num)
        assert lift_operator(n, i, k, start, num) == expected
