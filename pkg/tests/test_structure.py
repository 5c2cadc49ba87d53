import pytest

from cubefree.core.errors import NotSolvableError, PreconditionError
from cubefree.core.grouptheory import sylow_subgroup
from cubefree.core.oracle import exhaustive_frattini, exhaustive_socle
from cubefree.core.perm import PermGroup
from cubefree.core.structure import (OmegaAction, direct_complement, frattini, frattini_free_decomposition,
                                     omega_complement_abelian, socle, sylow_tower)
from conftest import perm_group


def test_sylow_tower_shapes(a4, d12, frobenius_21):
    tower = sylow_tower(a4)
    assert tower.primes == [3, 2]
    assert tower.shape == "even-bottom-2"
    tower = sylow_tower(d12)
    assert tower.primes == [2, 3]
    assert tower.shape == "even-top-2"
    tower = sylow_tower(frobenius_21)
    assert tower.primes == [3, 7]
    assert tower.shape == "odd"


def test_normal_sylow_two_subgroup_sits_at_the_bottom(c12):
    central_four = perm_group(["(1,2)", "(3,4)", "(5,6,7)"], 7)
    for group in (central_four, c12):
        tower = sylow_tower(group)
        assert tower.primes == [3, 2]
        assert tower.shape == "even-bottom-2"


def test_sylow_tower_tails_are_normal(groups_of_order_12, frobenius_21):
    for group in groups_of_order_12 + [frobenius_21]:
        tower = sylow_tower(group)
        for k in range(len(tower.factors)):
            assert tower.tail(k).is_normal_in(group)
        assert tower.tail(0).order() == group.order()
        for p in tower.primes:
            assert tower.hall_subgroup(p).order() * tower.sylow(p).order() == group.order()


def test_sylow_tower_needs_solvable(a5):
    with pytest.raises(NotSolvableError):
        sylow_tower(a5)


def test_socle_matches_exhaustive_search(groups_of_order_12, frobenius_21):
    for group in groups_of_order_12 + [frobenius_21]:
        found = socle(group)
        reference = exhaustive_socle(group)
        assert found.order() == reference.order()
        assert found.is_subgroup_of(reference)


def test_frattini_matches_exhaustive_search(groups_of_order_12, frobenius_21):
    for group in groups_of_order_12 + [frobenius_21]:
        found = frattini(group)
        reference = exhaustive_frattini(group)
        assert found.order() == reference.order()
        assert found.is_subgroup_of(reference)


def test_frattini_orders(c12, dic3, a4):
    assert frattini(c12).order() == 2
    assert frattini(dic3).order() == 2
    assert frattini(a4).order() == 1


def test_frattini_needs_a_normal_subgroup_of_order_p_not_a_normal_sylow(dic3):
    assert not sylow_subgroup(dic3, 2).is_normal_in(dic3)
    assert frattini(dic3).same_group(exhaustive_frattini(dic3))
    frobenius_20 = perm_group(["(1,2,3,4,5)", "(2,3,5,4)"], 5)
    assert frobenius_20.order() == 20
    assert frattini(frobenius_20).order() == 1
    assert exhaustive_frattini(frobenius_20).order() == 1


def test_frattini_free_decomposition_of_a4(a4):
    dec = frattini_free_decomposition(a4)
    assert dec.b_primes == []
    assert dec.c_primes == [2]
    assert dec.signature == ((2, 2),)
    assert dec.complement.order() == 3
    (matrix,) = dec.representation()
    assert matrix.components[0].order() == 3


def test_frattini_free_decomposition_of_d12(d12):
    dec = frattini_free_decomposition(d12)
    assert dec.b_primes == [2, 3]
    assert dec.c_primes == []
    assert dec.socle.order() == 6
    assert dec.complement.order() == 2
    for g in dec.socle.elements():
        assert dec.socle_element(dec.coordinates(g)) == g


def test_frattini_free_decomposition_of_frobenius_21(frobenius_21):
    dec = frattini_free_decomposition(frobenius_21)
    assert dec.b_primes == [7]
    assert dec.complement.order() == 3
    data = dec.to_dict()
    assert data["complement_order"] == 3
    assert len(data["complement_images"]) == len(dec.complement.generators)


def test_frattini_free_decomposition_rejects_frattini(dic3):
    with pytest.raises(PreconditionError):
        frattini_free_decomposition(dic3)


def test_complement_of_a3_in_s3(s3):
    a3 = perm_group(["(1,2,3)"], 3)
    certificate = omega_complement_abelian(s3, a3)
    assert certificate is not None
    assert certificate.complement.order() == 2
    assert all(a3.contains(v) for v in certificate.nu)


def test_no_complement_in_c4():
    c4 = perm_group(["(1,2,3,4)"], 4)
    assert omega_complement_abelian(c4, perm_group(["(1,3)(2,4)"], 4)) is None


def test_complement_in_dic3(dic3):
    certificate = omega_complement_abelian(dic3, sylow_subgroup(dic3, 3))
    assert certificate is not None
    assert certificate.complement.order() == 4


def test_invariant_complements(a4, c6):
    v4 = perm_group(["(1,2)(3,4)", "(1,3)(2,4)"], 4)
    assert omega_complement_abelian(a4, v4) is not None
    conjugation = OmegaAction.by_conjugation(a4.generators)
    assert omega_complement_abelian(a4, v4, conjugation) is None
    c3 = sylow_subgroup(c6, 3)
    found = omega_complement_abelian(c6, c3, OmegaAction.by_conjugation(c6.generators))
    assert found is not None
    assert found.complement.order() == 2


def test_direct_complement_of_the_centre(d12):
    centre = perm_group(["(1,4)(2,5)(3,6)"], 6)
    trivial = PermGroup.trivial(6)
    factor = direct_complement(d12, trivial, centre)
    assert factor is not None
    assert factor.order() == 6
    assert factor.is_normal_in(d12)
    assert direct_complement(d12, trivial, sylow_subgroup(d12, 3)) is None
