import pytest

from app.core.errors import BadSequence, ZeroModeError
from app.core.presentations import (
    Bracket,
    Gen,
    GenSym,
    RelationInstance,
    Scaled,
    Sum,
    bbar,
    bracket,
    cartan_a,
    cartan_m,
    cartan_twist,
    expand,
    gen,
    ladder_elements,
    linear,
    nested_commutator,
    proportional,
    relation_families,
    rescale_modes,
    substitute,
    u_relations,
    v_comm,
    validate_cyclic,
    w_comm,
    y_relations,
)
from app.core.scalars import is_zero

E = GenSym("e", 0, 0)
F = GenSym("f", 1, 2)
H = GenSym("h", 0, -1)


def test_generator_indices_reduce_mod_n():
    assert gen("e", 3, 1, 3).sym == GenSym("e", 0, 1)
    assert gen("f", -1, 0, 2).sym == GenSym("f", 1, 0)
    assert str(GenSym("c")) == "c"
    assert str(GenSym("x+", 1, 2)) == "x+[1,2]"
    assert GenSym("xi", 0, 0).side == "differential"
    assert GenSym("h", 0, 0).side == "difference"


def test_cartan_data():
    assert [cartan_a(3, 0, j) for j in range(3)] == [2, -1, -1]
    assert [cartan_a(2, 0, j) for j in range(2)] == [2, -2]
    assert cartan_a(1, 0, 0) == 0
    assert [cartan_m(3, 0, j) for j in range(3)] == [0, -1, 1]


def test_cartan_twist(sym):
    d = sym.d
    assert cartan_twist(1, 0, 0, 0, sym) == sym.zero
    assert cartan_twist(1, 0, 0, 1, sym) == 2 - d - 1 / d
    assert cartan_twist(2, 0, 1, 2, sym) == -(d ** 2 + d ** -2)
    assert cartan_twist(2, 1, 1, 2, sym) == 2 * sym.one
    assert cartan_twist(3, 0, 1, 1, sym) == -d
    assert cartan_twist(3, 0, 2, 1, sym) == -1 / d


def test_structure_constants_need_a_nonzero_mode(sym):
    with pytest.raises(ZeroModeError):
        bbar(2, 0, 1, 0, sym)
    assert bbar(3, 1, 1, 5, sym) == 2 * sym.one


def test_nested_commutator():
    a, b, c = Gen(E), Gen(F), Gen(H)
    assert nested_commutator([E, F, H]) == Bracket(a, Bracket(b, c))
    assert nested_commutator([a]) == a
    with pytest.raises(BadSequence):
        nested_commutator([])


def test_cyclic_templates():
    validate_cyclic([GenSym("e", 1, 3), GenSym("e", 2, 0), GenSym("e", 0, -2)], 3, "e")
    with pytest.raises(BadSequence):
        validate_cyclic([GenSym("e", 1, 3), GenSym("e", 2, 1), GenSym("e", 0, -2)], 3, "e")
    with pytest.raises(BadSequence):
        validate_cyclic([GenSym("e", 1, 0), GenSym("e", 0, 0), GenSym("e", 2, 0)], 3, "e")
    with pytest.raises(BadSequence):
        validate_cyclic([GenSym("e", 0, 0), GenSym("e", 1, 0)], 3, "e")
    with pytest.raises(BadSequence):
        validate_cyclic([GenSym("e", 0, 0), GenSym("f", 1, 0), GenSym("e", 2, 0)], 3, "e")


def test_v_and_w_commutators():
    expr = v_comm(3, 1, 1, 2, -1)
    assert expr == nested_commutator([GenSym("e", 1, 2), GenSym("e", 2, 0), GenSym("e", 0, -1)])
    assert v_comm(1, 0, 2, 1, 1) == Bracket(Gen(GenSym("e", 0, 1)), Gen(GenSym("e", 0, 1)))
    assert len(expand(v_comm(2, 0, 2, 0, 0))) == 1
    with pytest.raises(BadSequence):
        v_comm(1, 0, 1, 0, 0)
    with pytest.raises(BadSequence):
        w_comm(2, 0, 1, -1, 0)


def test_expand_is_multilinear():
    a, b, c = Gen(E), Gen(F), Gen(H)
    words = expand(bracket(a, b + Scaled(3, c)))
    assert words == {(E, F): 1, (E, H): 3}
    assert expand(bracket(a, b) - bracket(a, b)) == {}
    assert expand(Sum(())) == {}


def test_linear_drops_zero_coefficients(sym):
    expr = linear([(sym.one, Gen(E)), (sym.zero, Gen(F))])
    assert expr == Sum((Scaled(sym.one, Gen(E)),))


def test_substitute_and_rescale(sym):
    expr = bracket(Gen(GenSym("x+", 0, 2)), Gen(GenSym("x-", 0, 1)))
    scaled = substitute(expr, lambda s: rescale_modes(s, sym))
    assert expand(scaled) == {(GenSym("x+", 0, 2), GenSym("x-", 0, 1)): sym.beta ** 3}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_beta_rescaling_sends_relations_to_their_unit_form(n, sym):
    unit = sym.specialize({"beta": 1})
    for inst, unit_inst in zip(y_relations(n, 2, sym), y_relations(n, 2, unit)):
        scaled = expand(substitute(inst.expr, lambda s: rescale_modes(s, sym)))
        lam = proportional(scaled, expand(unit_inst.expr))
        assert lam is not None and not is_zero(lam), inst.key


def test_relations_without_rescaling_are_not_proportional(sym):
    unit = sym.specialize({"beta": 1})
    pairs = zip(y_relations(1, 1, sym), y_relations(1, 1, unit))
    inst, unit_inst = next((a, b) for a, b in pairs if a.family == "y3")
    assert proportional(expand(inst.expr), expand(unit_inst.expr)) is None


def test_proportional():
    assert proportional({"a": 2, "b": 4}, {"a": 1, "b": 2}) == 2
    assert proportional({"a": 2, "b": 5}, {"a": 1, "b": 2}) is None
    assert proportional({}, {}) == 0
    assert proportional({"a": 1}, {}) is None


@pytest.mark.parametrize("n", [1, 2, 3])
def test_toroidal_catalog_families(n, sym):
    families = relation_families(u_relations(n, 1, sym))
    assert families == ["u1", "u2", "u3", "u4", "u5", "u6", "u7.1", "u7.2"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_yangian_catalog_families(n, sym):
    families = relation_families(y_relations(n, 1, sym))
    assert families == ["y1", "y2", "y3", "y4", "y5", "y6"]


def test_catalog_sizes(sym):
    instances = u_relations(3, 0, sym)
    assert sum(inst.family == "u1" for inst in instances) == 9
    serre = [inst for inst in instances if inst.family == "u7.1"]
    assert len(serre) == 6
    assert all(inst.indices["branch"] == "serre" for inst in serre)
    assert sum(inst.family == "y1" for inst in y_relations(1, 1, sym)) == 4


def test_relation_keys_are_stable(sym):
    inst = RelationInstance("u1", dict(i=0, j=1, k=-1, l=1), Sum(()))
    assert inst.key == ("u1", (("i", "0"), ("j", "1"), ("k", "-1"), ("l", "1")))
    keys = [inst.key for inst in u_relations(2, 1, sym)]
    assert len(keys) == len(set(keys))
    keys = [inst.key for inst in y_relations(2, 1, sym)]
    assert len(keys) == len(set(keys))


def test_ladder_elements_combine_cartan_modes(sym):
    h3, h4 = ladder_elements(2, sym)
    words = expand(h3)
    assert set(words) == {GenSym("xi", 0, 3), GenSym("xi", 1, 3)}
    assert set(expand(h4)) == {GenSym("xi", i, r) for i in (0, 1) for r in (2, 4)}
