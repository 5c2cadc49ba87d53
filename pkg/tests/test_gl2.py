import random

import pytest

from cubefree.core.errors import PreconditionError
from cubefree.core.gl2 import (MONOMIAL, REDUCIBLE, SINGER, SINGER_NORMALIZER, conjugate_in_gl_products,
                               gl2_classify, group_closure)
from cubefree.core.modp import FpMatrix, GLProductElement, companion_matrix, gl_elements, singer_cycle
from cubefree.core.oracle import exhaustive_gl_conjugator


def _involution_inverting(c: FpMatrix) -> FpMatrix:
    return next(t for t in gl_elements(c.p) if not t.is_identity() and (t * t).is_identity()
                and c.conjugate(t) == c.inverse())


def test_diagonal_subgroup_is_reducible():
    label = gl2_classify([FpMatrix.diagonal(5, 2, 3)], 5)
    assert label.kind == REDUCIBLE
    assert label.order == 4


@pytest.mark.parametrize("r", [3, 6])
def test_singer_subgroups(r):
    c = singer_cycle(5).subgroup_generator(r)
    label = gl2_classify([c], 5)
    assert label.kind == SINGER
    assert label.parameter == r


def test_monomial_subgroup():
    d = FpMatrix.diagonal(7, 2, 4)
    w = FpMatrix(7, ((0, 1), (1, 0)))
    label = gl2_classify([d, w], 7)
    assert label.kind == MONOMIAL
    assert label.order == 6


def test_singer_normalizer_subgroup():
    c = singer_cycle(5).subgroup_generator(3)
    label = gl2_classify([c, _involution_inverting(c)], 5)
    assert label.kind == SINGER_NORMALIZER
    assert label.parameter == 3
    assert label.order == 6


def test_classification_rejects_p_subgroups():
    with pytest.raises(PreconditionError):
        gl2_classify([FpMatrix(5, ((1, 1), (0, 1)))], 5)


def test_canonical_conjugate_is_a_class_invariant():
    c = singer_cycle(5).subgroup_generator(3)
    gens = [c, _involution_inverting(c)]
    label = gl2_classify(gens, 5)
    elements = group_closure(gens, FpMatrix.identity(5))
    assert {k.conjugate(label.conjugator) for k in elements} == set(label.canonical)
    rng = random.Random(7)
    matrices = list(gl_elements(5))
    for _ in range(5):
        x = rng.choice(matrices)
        moved = gl2_classify([g.conjugate(x) for g in gens], 5)
        assert moved.canonical == label.canonical
    for n in label.normalizer_gens:
        assert {k.conjugate(n) for k in label.canonical} == set(label.canonical)


def test_conjugate_in_gl_products_matches_exhaustive_search():
    signature = ((3, 1), (5, 2))
    c = singer_cycle(5).subgroup_generator(3)
    t = _involution_inverting(c)
    source = [GLProductElement((FpMatrix(3, ((2,),)), t)), GLProductElement((FpMatrix.identity(3, 1), c))]
    x = GLProductElement((FpMatrix(3, ((2,),)), FpMatrix(5, ((1, 2), (3, 4)))))
    target = [g.conjugate(x) for g in source]
    found = conjugate_in_gl_products(source, target, signature)
    assert found is not None
    identity = GLProductElement.identity(signature)
    moved = {k.conjugate(found) for k in group_closure(source, identity)}
    assert moved == set(group_closure(target, identity))
    assert exhaustive_gl_conjugator(source, target, signature) is not None


def test_non_conjugate_products():
    signature = ((3, 1), (5, 2))
    source = [GLProductElement((FpMatrix(3, ((2,),)), FpMatrix.diagonal(5, 1, 4)))]
    target = [GLProductElement((FpMatrix(3, ((2,),)), FpMatrix.scalar(5, 4)))]
    assert conjugate_in_gl_products(source, target, signature) is None
    assert exhaustive_gl_conjugator(source, target, signature) is None


def test_signature_mismatch_is_rejected():
    element = GLProductElement((FpMatrix.identity(5),))
    with pytest.raises(PreconditionError):
        conjugate_in_gl_products([element], [element], ((7, 2),))


def _full_normalizer(canonical):
    members = set(canonical)
    return {x for x in gl_elements(canonical[0].p) if all(k.conjugate(x) in members for k in canonical)}


def test_singer_subgroups_go_to_the_standard_cyclic_subgroup():
    c = singer_cycle(7).subgroup_generator(12)
    x = FpMatrix(7, ((1, 2), (3, 1)))
    moved = c.conjugate(x)
    label = gl2_classify([moved], 7)
    assert label.kind == SINGER
    assert label.parameter == 12
    identity = FpMatrix.identity(7)
    assert set(label.canonical) == set(group_closure([c], identity))
    assert {k.conjugate(label.conjugator) for k in group_closure([moved], identity)} == set(label.canonical)


@pytest.mark.parametrize("p, gens", [
    (7, [FpMatrix.diagonal(7, 2, 4), FpMatrix(7, ((0, 1), (1, 0)))]),
    (5, [FpMatrix.diagonal(5, 2, 3)]),
])
def test_normalizer_generators_match_a_full_search(p, gens):
    label = gl2_classify(gens, p)
    closure = set(group_closure(label.normalizer_gens, FpMatrix.identity(p)))
    assert closure == _full_normalizer(label.canonical)
    rng = random.Random(3)
    matrices = list(gl_elements(p))
    for _ in range(4):
        x = rng.choice(matrices)
        assert gl2_classify([g.conjugate(x) for g in gens], p).canonical == label.canonical


def test_singer_normalizer_generators_match_a_full_search():
    c = singer_cycle(5).subgroup_generator(3)
    label = gl2_classify([c, _involution_inverting(c)], 5)
    assert set(group_closure(label.normalizer_gens, FpMatrix.identity(5))) == _full_normalizer(label.canonical)


def test_scalar_subgroups_and_gl2_over_two():
    label = gl2_classify([FpMatrix.scalar(5, 2)], 5)
    assert label.kind == REDUCIBLE
    assert label.conjugator.is_identity()
    assert len(group_closure(label.normalizer_gens, FpMatrix.identity(5))) == 480
    label = gl2_classify([companion_matrix(2, 1, 1)], 2)
    assert label.kind == SINGER
    assert label.order == 3
