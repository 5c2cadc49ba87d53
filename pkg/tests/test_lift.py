import pytest

from cubefree.core.homs import quotient
from cubefree.core.lift import (cyclic_lift, frattini_factorization_holds, frattini_free_isomorphism,
                                frattini_ladder, lift, lift_context, sylow_pair_conforms)
from cubefree.core.oracle import exhaustive_lift, scramble
from cubefree.core.perm import Permutation, PermGroup
from cubefree.utils.groupfile import group_from_dict
from group_examples import DihedralGroupGenerator
from conftest import perm_group


@pytest.fixture
def d18():
    return group_from_dict(DihedralGroupGenerator.generate({'n': 9}))


def test_frattini_free_isomorphism_of_scrambled_copies(a4, d12, frobenius_21):
    for seed, group in enumerate([a4, d12, frobenius_21]):
        copy = scramble(group, seed, extra_points=1).group
        hom = frattini_free_isomorphism(group, copy)
        assert hom is not None
        assert hom.is_isomorphism()


def test_frattini_free_groups_with_different_socles(d12, c2xc6, a4):
    assert frattini_free_isomorphism(d12, c2xc6) is None
    assert frattini_free_isomorphism(a4, d12) is None


def test_frattini_ladder(c12, d18, a4):
    primes, steps = frattini_ladder(c12)
    assert primes == [2]
    assert steps[-1].quotient.order() == 6
    primes, steps = frattini_ladder(d18)
    assert primes == [3]
    assert steps[-1].quotient.order() == 6
    assert frattini_ladder(a4) == ([], [])


def test_cyclic_lift_factors_through_the_quotients(dic3):
    copy = scramble(dic3, 4).group
    _, steps = frattini_ladder(dic3)
    _, steps_t = frattini_ladder(copy)
    phi = frattini_free_isomorphism(steps[-1].quotient, steps_t[-1].quotient)
    assert phi is not None
    hom = cyclic_lift(steps[-1], steps_t[-1], phi)
    assert hom.is_isomorphism()
    assert frattini_factorization_holds(hom, steps[-1], steps_t[-1], phi)


@pytest.mark.parametrize("name", ["c12", "dic3", "d18", "frobenius_21"])
def test_lift_finds_isomorphisms(name, request):
    group = request.getfixturevalue(name)
    copy = scramble(group, 9, extra_points=2).group
    hom = lift(group, copy)
    assert hom is not None
    assert hom.is_isomorphism()


def test_lift_separates_groups_with_equal_frattini_quotient_orders(c12, dic3):
    assert lift(c12, dic3) is None
    assert lift(dic3, c12) is None


def test_lift_context_matches_sylow_bases(dic3):
    copy = scramble(dic3, 4).group
    _, steps = frattini_ladder(dic3)
    _, steps_t = frattini_ladder(copy)
    phi = frattini_free_isomorphism(steps[-1].quotient, steps_t[-1].quotient)
    ctx = lift_context(steps[-1], steps_t[-1], phi)
    assert ctx is not None
    assert ctx.prime == 2
    assert ctx.primes == [2, 3]
    assert [y.order() for y in ctx.basis_t] == [4, 3]
    assert ctx.generator_t.order() == 4
    assert ctx.hall_t.order() == 3
    assert ctx.compatible()
    assert steps_t[-1].project(ctx.generator_t) == phi(steps[-1].project(ctx.generator))


def test_cyclic_lift_rejects_a_non_cyclic_sylow_subgroup(dic3, d12):
    _, steps = frattini_ladder(dic3)
    centre = perm_group(["(1,4)(2,5)(3,6)"], 6)
    factor_t = quotient(d12, centre)
    phi = frattini_free_isomorphism(steps[-1].quotient, factor_t.quotient)
    assert phi is not None
    assert lift_context(steps[-1], factor_t, phi) is None
    assert cyclic_lift(steps[-1], factor_t, phi) is None
    assert exhaustive_lift(steps[-1], factor_t, phi) is None


@pytest.mark.parametrize("name", ["c12", "dic3", "d18"])
def test_cyclic_lift_agrees_with_exhaustive_lift(name, request):
    group = request.getfixturevalue(name)
    copy = scramble(group, 11).group
    _, steps = frattini_ladder(group)
    _, steps_t = frattini_ladder(copy)
    phi = frattini_free_isomorphism(steps[-1].quotient, steps_t[-1].quotient)
    hom = cyclic_lift(steps[-1], steps_t[-1], phi)
    other = exhaustive_lift(steps[-1], steps_t[-1], phi)
    assert hom is not None and other is not None
    for h in (hom, other):
        assert h.is_isomorphism()
        assert frattini_factorization_holds(h, steps[-1], steps_t[-1], phi)


def test_sylow_pair_with_a_faithful_cyclic_action():
    shift = Permutation([(i + 1) % 19 for i in range(19)])
    w = Permutation([(4 * i) % 19 for i in range(19)])
    assert w.order() == 9
    group = PermGroup([shift, w], 19)
    assert group.order() == 171
    p19, q9 = group.subgroup([shift]), group.subgroup([w])
    assert not sylow_pair_conforms(p19, q9, group.subgroup([w ** 3]))


def test_sylow_pair_in_direct_and_dihedral_products(d18):
    c19c9 = perm_group(["(" + ",".join(str(i) for i in range(1, 20)) + ")",
                        "(" + ",".join(str(i) for i in range(20, 29)) + ")"], 28)
    x, w = c19c9.generators
    assert sylow_pair_conforms(c19c9.subgroup([x]), c19c9.subgroup([w]), c19c9.subgroup([w ** 3]))
    rotation = next(g for g in d18.elements() if g.order() == 9)
    reflection = next(g for g in d18.elements() if g.order() == 2)
    assert sylow_pair_conforms(d18.subgroup([reflection]), d18.subgroup([rotation]), d18.subgroup([rotation ** 3]))
