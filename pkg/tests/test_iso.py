import itertools

import pytest

from cubefree.core.catalog import build_catalog, save_catalog
from cubefree.core.errors import NotCubefreeError, PreconditionError, VerificationError
from cubefree.core.homs import GroupHom
from cubefree.core.iso import (cubefree_decomposition, isomorphism_cubefree, psl2_isomorphism, psl2_parameter,
                               require_trivial_radical, verify_isomorphism)
from cubefree.core.modp import FpMatrix
from cubefree.core.oracle import brute_force_isomorphism, scramble
from cubefree.core.perm import Permutation, PermGroup
from cubefree.utils.groupfile import group_from_dict
from group_examples import (AlternatingGroupGenerator, CyclicGroupGenerator, DeskScaleGenerator,
                            DicyclicGroupGenerator, PSL2Generator)
from group_examples.products import direct_product


def test_psl2_parameter():
    assert psl2_parameter(60) == 5
    assert psl2_parameter(168) == 7
    assert psl2_parameter(1092) == 13
    assert psl2_parameter(61) is None
    assert psl2_parameter(120) is None


def test_order_12_groups_are_pairwise_non_isomorphic(groups_of_order_12):
    for i, group in enumerate(groups_of_order_12):
        for other in groups_of_order_12[i + 1:]:
            assert isomorphism_cubefree(group, other) is None


def test_scrambled_copies_are_isomorphic(groups_of_order_12):
    for seed, group in enumerate(groups_of_order_12):
        copy = scramble(group, seed, extra_points=seed % 3).group
        hom = isomorphism_cubefree(group, copy)
        assert hom is not None
        assert hom.is_isomorphism()


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_psl2_recognition(p):
    group = scramble(group_from_dict(PSL2Generator.generate({'p': p})), p).group
    hom = psl2_isomorphism(group)
    assert hom is not None
    assert hom.is_isomorphism()
    assert hom.codomain.degree == p + 1


def test_psl2_recognition_needs_a_perfect_group(c12):
    with pytest.raises(PreconditionError):
        psl2_isomorphism(c12)
    with pytest.raises(PreconditionError):
        psl2_isomorphism(group_from_dict(CyclicGroupGenerator.generate({'n': 60})))


def test_a5_and_psl2_5(a5, psl2_5):
    hom = isomorphism_cubefree(a5, psl2_5)
    assert hom is not None
    assert hom.codomain is psl2_5


def test_decomposition_of_a_product_with_psl2(a5):
    c3 = group_from_dict(CyclicGroupGenerator.generate({'n': 3}))
    group = direct_product([a5, c3])
    dec = cubefree_decomposition(group)
    assert dec.p == 5
    assert dec.simple_part.order() == 60
    assert dec.solvable_part.order() == 3
    copy = scramble(group, 2).group
    assert isomorphism_cubefree(group, copy) is not None
    assert isomorphism_cubefree(group, direct_product([psl2_isomorphism(a5).codomain, c3])) is not None


def test_non_cubefree_orders_are_rejected(s4, c6):
    with pytest.raises(NotCubefreeError):
        isomorphism_cubefree(s4, s4)
    with pytest.raises(NotCubefreeError):
        isomorphism_cubefree(c6, s4)


def test_different_orders_are_not_isomorphic(c6, c12):
    assert isomorphism_cubefree(c6, c12) is None


def test_verify_isomorphism_transcript(dic3):
    scrambled = scramble(dic3, 1)
    transcript = verify_isomorphism(scrambled.hidden)
    assert transcript.bijective
    assert transcript.well_defined
    assert transcript.relations_checked > 0
    assert transcript.to_dict()["presentation"] == "PcPresentation"


def test_verify_isomorphism_rejects_collapsing_maps(c6):
    collapse = GroupHom(c6, c6, [c6.identity] * len(c6.generators))
    with pytest.raises(VerificationError):
        verify_isomorphism(collapse)


@pytest.mark.slow
def test_desk_scale_group():
    group = group_from_dict(DeskScaleGenerator.generate({}))
    assert group.order() == 44100
    copy = scramble(group, 44100, extra_points=3).group
    hom = isomorphism_cubefree(group, copy)
    assert hom is not None
    assert hom.is_isomorphism()


AGREEMENT_ORDERS = [6, 12, 18, 20, 28, 30] + [
    pytest.param(n, marks=pytest.mark.slow) for n in (36, 44, 50, 52, 60, 63, 75, 84, 100, 150, 294)]

ROUND_TRIP_ORDERS = (12, 18, 20, 28, 30, 36, 44, 50, 52, 60, 63, 75, 84, 100)


@pytest.mark.parametrize("n", AGREEMENT_ORDERS)
def test_catalog_verdicts_match_brute_force(n):
    groups = [entry.group for entry in build_catalog([n])]
    copies = [scramble(group, n + i, extra_points=i % 2).group for i, group in enumerate(groups)]
    for i, group in enumerate(groups):
        for j, copy in enumerate(copies):
            structured = isomorphism_cubefree(group, copy)
            oracle = brute_force_isomorphism(group, copy)
            assert (structured is None) == (oracle is None) == (i != j)
            if structured is not None:
                assert structured.is_isomorphism()


@pytest.mark.slow
def test_scrambled_round_trips():
    groups = [entry.group for entry in build_catalog(ROUND_TRIP_ORDERS)]
    a5 = group_from_dict(AlternatingGroupGenerator.generate({'n': 5}))
    groups.append(direct_product([a5, group_from_dict(CyclicGroupGenerator.generate({'n': 7}))]))
    pairs = [(group, seed) for group in groups for seed in range(3)]
    assert len(pairs) >= 200
    for group, seed in pairs:
        copy = scramble(group, seed, extra_points=seed).group
        hom = isomorphism_cubefree(group, copy)
        assert hom is not None, f"{group.name} seed {seed}"
        assert verify_isomorphism(hom).bijective


def _isomorphism_images(generator, params):
    group = group_from_dict(generator.generate(params))
    copy = scramble(group, 7, extra_points=1).group
    return isomorphism_cubefree(group, copy).gen_images


def test_runs_are_deterministic(tmp_path):
    manifests = [save_catalog(build_catalog([12, 20]), tmp_path / run).read_text(encoding="utf-8")
                 for run in ("first", "second")]
    assert manifests[0] == manifests[1]
    for generator, params in [(DicyclicGroupGenerator, {'n': 3}), (AlternatingGroupGenerator, {'n': 5})]:
        assert _isomorphism_images(generator, params) == _isomorphism_images(generator, params)


def _sl2_5():
    """SL_2(5) on the 24 nonzero row vectors of F_5^2"""
    vectors = [v for v in itertools.product(range(5), repeat=2) if any(v)]
    index = {v: i for i, v in enumerate(vectors)}
    gens = [Permutation([index[m.act(v)] for v in vectors])
            for m in (FpMatrix(5, ((0, 4), (1, 0))), FpMatrix(5, ((1, 1), (0, 1))))]
    return PermGroup(gens, 24, name="SL2(5)")


def test_simple_part_needs_a_trivial_radical(a5):
    require_trivial_radical(a5)
    sl2 = _sl2_5()
    assert sl2.order() == 120
    with pytest.raises(PreconditionError):
        require_trivial_radical(sl2)
    with pytest.raises(PreconditionError):
        psl2_isomorphism(sl2)
