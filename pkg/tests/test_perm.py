import random

import pytest
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup as SympyGroup

from cubefree.core.config import EngineConfig
from cubefree.core.errors import (DegreeMismatchError, GroupParseError, IndexBoundError, NotNormalError,
                                  VerificationError)
from cubefree.core.homs import GroupHom, coset_action, quotient
from cubefree.core.perm import Permutation, PermGroup, element_centralizer, orbit_stabilizer, parse_permutation
from cubefree.core.slp import evaluate_word
from conftest import perm_group


def test_parse_and_print_cycle_notation():
    g = parse_permutation("(1,2,3)(4,5)", 5)
    assert g.images == (1, 2, 0, 4, 3)
    assert str(g) == "(1,2,3)(4,5)"
    assert parse_permutation("()", 4).is_identity()
    assert parse_permutation(" (2,4) ", 4) == Permutation.from_cycles([[1, 3]], 4)


@pytest.mark.parametrize("text, column", [
    ("(1,2", 5),
    ("(1,7)", 4),
    ("(1,2)(2,3)", 7),
    ("1,2)", 1),
    ("(1,x)", 4),
])
def test_parse_errors_carry_the_column(text, column):
    with pytest.raises(GroupParseError) as info:
        parse_permutation(text, 5)
    assert info.value.column == column


def test_products_compose_left_to_right():
    p = parse_permutation("(1,2)", 3)
    q = parse_permutation("(2,3)", 3)
    assert (p * q)(0) == 2
    assert p * q == parse_permutation("(1,3,2)", 3)
    assert p.conjugate(q) == parse_permutation("(1,3)", 3)
    assert (p * q) ** 3 == Permutation.identity(3)
    assert ((p * q) ** -1) * (p * q) == Permutation.identity(3)


def test_degree_mismatch_is_rejected():
    with pytest.raises(DegreeMismatchError):
        _ = parse_permutation("(1,2)", 2) * parse_permutation("(1,2)", 3)


@pytest.mark.parametrize("gens, degree", [
    (["(1,2,3,4)", "(1,2)"], 4),
    (["(1,2,3)", "(1,2,3,4,5)"], 5),
    (["(1,2,3,4,5,6)", "(1,6)(2,5)(3,4)"], 6),
    (["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)", "(1,2)(3,6)"], 7),
    (["(1,2)(3,4)", "(5,6,7)", "(8,9,10,11,12)"], 12),
])
def test_chain_order_matches_sympy(gens, degree):
    group = perm_group(gens, degree)
    reference = SympyGroup([SympyPermutation(list(g.images)) for g in group.generators])
    assert group.order() == reference.order()


def test_elements_are_listed_once(a4):
    elements = list(a4.elements())
    assert len(elements) == 12
    assert len(set(elements)) == 12
    assert all(a4.contains(g) for g in elements)


def test_sift_words_and_programs_rebuild_elements(a5):
    rng = random.Random(3)
    for _ in range(25):
        g = a5.random_element(rng)
        word = a5.sift_word(g)
        assert evaluate_word(word, a5.strong_generators, a5.identity) == g
        program = a5.straight_line_program(g)
        assert program.evaluate_one(list(a5.generators), a5.identity) == g
    outside = parse_permutation("(1,2)", 5)
    assert not a5.contains(outside)
    assert a5.sift_word(outside) is None


def test_membership_is_closed_under_products(s4):
    rng = random.Random(11)
    for _ in range(20):
        g, h = s4.random_element(rng), s4.random_element(rng)
        assert s4.contains(g * h)


def test_orbit_stabilizer_on_points(s4):
    orbit, stabilizer = orbit_stabilizer(s4, 0, lambda x, g: g(x))
    assert sorted(orbit) == [0, 1, 2, 3]
    assert stabilizer.order() == 6
    assert all(g(0) == 0 for g in stabilizer.generators)


def test_element_centralizer(s4):
    transposition = parse_permutation("(1,2)", 4)
    cent = element_centralizer(s4, transposition)
    assert cent.order() == 4


def test_quotient_of_s3_by_a3(s3):
    a3 = perm_group(["(1,2,3)"], 3)
    q = quotient(s3, a3)
    assert q.quotient.order() == 2
    assert q.project(parse_permutation("(1,2,3)", 3)).is_identity()


def test_quotient_of_c4():
    c4 = perm_group(["(1,2,3,4)"], 4)
    n = perm_group(["(1,3)(2,4)"], 4)
    assert quotient(c4, n).quotient.order() == 2


def test_quotient_section_round_trip(s4):
    v4 = perm_group(["(1,2)(3,4)", "(1,3)(2,4)"], 4)
    q = quotient(s4, v4)
    assert q.quotient.order() == 6
    for element in q.quotient.elements():
        assert q.project(q.section(element)) == element


def test_quotient_union_action_is_faithful(d12):
    centre = perm_group(["(1,4)(2,5)(3,6)"], 6)
    cfg = EngineConfig(regular_quotient_limit=2, index_cap=100)
    q = quotient(d12, centre, config=cfg)
    assert q.quotient.order() == 6
    rng = random.Random(5)
    for _ in range(10):
        g = d12.random_element(rng)
        assert q.project(q.section(q.project(g))) == q.project(g)


def test_quotient_of_a_p_group_above_the_regular_limit():
    c5c5 = perm_group(["(1,2,3,4,5)", "(6,7,8,9,10)"], 10)
    q = quotient(c5c5, PermGroup.trivial(10), config=EngineConfig(regular_quotient_limit=10))
    assert q.regular
    assert q.quotient.order() == 25

    cycles = "(" + ",".join(str(i) for i in range(1, 24)) + ")"
    shifted = "(" + ",".join(str(i) for i in range(24, 47)) + ")"
    c23c23 = perm_group([cycles, shifted], 46)
    q = quotient(c23c23, PermGroup.trivial(46))
    assert q.quotient.order() == 529
    for g in c23c23.generators:
        assert q.project(q.section(q.project(g))) == q.project(g)


def test_quotient_rejects_non_normal(s3):
    with pytest.raises(NotNormalError):
        quotient(s3, perm_group(["(1,2)"], 3))


def test_coset_action_respects_index_cap(a5):
    trivial = PermGroup.trivial(5)
    with pytest.raises(IndexBoundError):
        coset_action(a5, trivial, EngineConfig(index_cap=10, regular_quotient_limit=10))
    a4 = perm_group(["(1,2,3)", "(2,3,4)"], 5)
    action = coset_action(a5, a4)
    assert action.image().order() == 60
    assert action.codomain.degree == 5


def test_build_chain_returns_the_group_with_its_order():
    group = perm_group(["(1,2,3,4,5)", "(1,2,3)"], 5)
    assert group.build_chain() is group
    assert group.order() == 60


def _sign(s4):
    """Sign map for S4 generated by a 4-cycle and a transposition"""
    odd = parse_permutation("(1,2)", 2)
    return GroupHom(s4, perm_group(["(1,2)"], 2), [odd, odd])


def test_sign_map_kernel_and_preimage():
    s4 = perm_group(["(1,2,3,4)", "(1,2)"], 4)
    a4 = perm_group(["(1,2,3)", "(2,3,4)"], 4)
    sign = _sign(s4)
    assert sign.is_well_defined()
    assert not sign.is_injective()
    assert sign(parse_permutation("(1,2,3)", 4)).is_identity()
    assert sign.kernel().same_group(a4)
    assert sign.preimage(PermGroup.trivial(2)).same_group(a4)
    assert sign.preimage(sign.image()).order() == 24


def test_compose_and_inverse():
    s4 = perm_group(["(1,2,3,4)", "(1,2)"], 4)
    a4 = perm_group(["(1,2,3)", "(2,3,4)"], 4)
    inclusion = GroupHom(a4, s4, a4.generators)
    assert inclusion.is_injective()
    assert inclusion.compose(_sign(s4)).image().order() == 1

    c3 = perm_group(["(1,2,3)"], 3)
    inversion = GroupHom(c3, c3, [c3.generators[0].inverse()])
    assert inversion.is_isomorphism()
    assert inversion.compose(inversion.inverse()).gen_images == c3.generators


def test_assignments_that_are_not_homomorphisms():
    c3 = perm_group(["(1,2,3)"], 3)
    c2 = perm_group(["(1,2)"], 2)
    swap = parse_permutation("(1,2)", 2)
    assert not GroupHom(c3, c2, [swap]).is_well_defined()
    with pytest.raises(VerificationError):
        GroupHom.from_images(c3, c2, c3.generators, [swap])
