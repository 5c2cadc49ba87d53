"""
Isomorphism test for permutation groups of cube-free order

A group of cube-free order is A × L with A trivial or PSL_2(p) and L
solvable. A is its solvable residual and L the centralizer of A. The
PSL_2 factors are matched through a standard copy on the projective
line; the solvable factors are matched by lifting through Frattini
quotients.
"""

import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from loguru import logger
from sympy import isprime

from cubefree.core.config import EngineConfig, get_config
from cubefree.core.errors import PreconditionError, StructureError, VerificationError
from cubefree.core.grouptheory import (centralizer, conjugacy_classes, derived_series, derived_subgroup, is_solvable,
                                       normal_closure, p_part, require_cubefree)
from cubefree.core.homs import GroupHom, graph_order
from cubefree.core.lift import lift
from cubefree.core.perm import Permutation, PermGroup
from cubefree.core.presentations import ConstructivePresentation, constructive_presentation
from cubefree.core.slp import Word, evaluate_word


@dataclass
class CubefreeDecomposition:
    """G = A × L with A = 1 or PSL_2(p), L solvable"""

    group: PermGroup
    simple_part: PermGroup
    solvable_part: PermGroup
    p: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"order": self.group.order(), "simple_order": self.simple_part.order(),
                "psl2_parameter": self.p, "solvable_order": self.solvable_part.order()}


def psl2_parameter(order: int) -> Optional[int]:
    """Prime p >= 5 with |PSL_2(p)| = p(p^2 - 1)/2 = order"""
    p = 5
    while p * (p * p - 1) // 2 <= order:
        if isprime(p) and p * (p * p - 1) // 2 == order:
            return p
        p += 2
    return None


def standard_psl2(p: int) -> PermGroup:
    """PSL_2(p) on the projective line 0, ..., p-1, ∞ = p, generated by z -> z+1 and z -> -1/z"""
    shift = Permutation([(z + 1) % p for z in range(p)] + [p])
    images = [p] + [(-pow(z, -1, p)) % p for z in range(1, p)] + [0]
    return PermGroup([shift, Permutation(images)], p + 1, name=f"PSL2({p})", order_hint=p * (p * p - 1) // 2)


def cubefree_decomposition(group: PermGroup, config: Optional[EngineConfig] = None) -> CubefreeDecomposition:
    require_cubefree(group.order())
    residual = derived_series(group)[-1]
    if residual.order() == 1:
        return CubefreeDecomposition(group, residual, group)
    solvable = centralizer(group, residual)
    if residual.order() * solvable.order() != group.order():
        raise StructureError("perfect part and its centralizer do not span the group")
    p = psl2_parameter(residual.order())
    if p is None:
        raise StructureError(f"perfect part of order {residual.order()} is not PSL2(p)")
    logger.debug(f"decomposition: PSL2({p}) × solvable part of order {solvable.order()}")
    return CubefreeDecomposition(group, residual, solvable, p)


_PROFILE_WORDS: List[Word] = [
    ((0, 1), (1, 1)),
    ((0, 1), (1, 2)),
    ((0, 2), (1, 1)),
    ((0, 1), (1, 1), (0, -1), (1, -1)),
    ((0, 1), (1, 1), (0, 1), (1, -1)),
]


def _profile(x: Permutation, y: Permutation) -> List[int]:
    return [evaluate_word(w, (x, y), x ** 0).order() for w in _PROFILE_WORDS]


def _element_of_order(group: PermGroup, order: int, rng: random.Random, tries: int) -> Optional[Permutation]:
    for _ in range(tries):
        g = group.random_element(rng)
        if g.order() % order == 0:
            return g ** (g.order() // order)
    return None


def require_trivial_radical(group: PermGroup) -> None:
    """
    Raise PreconditionError when the group has a nontrivial solvable normal subgroup

    A nontrivial solvable radical contains an abelian minimal normal
    subgroup, so some element of prime order has a solvable normal closure.
    """
    for rep, _ in conjugacy_classes(group):
        if rep.is_identity() or not isprime(rep.order()):
            continue
        closure = normal_closure(group, [rep])
        if is_solvable(closure):
            raise PreconditionError(f"group has a solvable normal subgroup of order {closure.order()}")


def psl2_isomorphism(group: PermGroup, config: Optional[EngineConfig] = None) -> Optional[GroupHom]:
    """
    Isomorphism onto the standard copy of PSL_2(p), or None

    x of order p and y of order (p+1)/2 generating the group are chosen;
    x goes to z -> z+1 and y is matched against every element of order
    (p+1)/2 of the standard copy with the same order profile on a few
    short words. A match defines a homomorphism when the graph group
    has order |A|.
    The group must be perfect with trivial solvable radical, otherwise
    PreconditionError is raised.
    """
    cfg = get_config(config)
    order = group.order()
    p = psl2_parameter(order)
    if p is None:
        raise PreconditionError(f"order {order} is not the order of PSL2(p) for a prime p >= 5")
    if derived_subgroup(group).order() != order:
        raise PreconditionError("group is not perfect")
    require_trivial_radical(group)
    rng = random.Random(cfg.random_seed)
    m = (p + 1) // 2
    x = _element_of_order(group, p, rng, cfg.sylow_random_tries)
    if x is None:
        x = next(p_part(g, p) for g in group.elements() if g.order() % p == 0)
    y = None
    for _ in range(cfg.sylow_random_tries):
        candidate = _element_of_order(group, m, rng, cfg.sylow_random_tries)
        if candidate is not None and PermGroup([x, candidate], group.degree).order() == order:
            y = candidate
            break
    if y is None:
        y = next((g for g in group.elements()
                  if g.order() == m and PermGroup([x, g], group.degree).order() == order), None)
        if y is None:
            raise StructureError(f"no generating pair of orders {p} and {m}")
    standard = standard_psl2(p)
    t = standard.generators[0]
    profile = _profile(x, y)
    for candidate in standard.elements():
        if candidate.order() != m or _profile(t, candidate) != profile:
            continue
        if graph_order([x, y], [t, candidate]) != order:
            continue
        if PermGroup([t, candidate], p + 1).order() != order:
            continue
        hom = GroupHom.from_images(group, standard, [x, y], [t, candidate], name=f"PSL2({p})")
        logger.debug(f"recognised PSL2({p}) on {group.degree} points")
        return hom
    logger.warning(f"no assignment onto PSL2({p}) found")
    return None


@dataclass
class VerificationTranscript:
    domain_order: int
    codomain_order: int
    image_order: int
    well_defined: bool
    relations_checked: int = 0
    presentation_kind: Optional[str] = None
    notes: List[str] = field(default_factory=list)

    @property
    def bijective(self) -> bool:
        return self.domain_order == self.codomain_order == self.image_order

    def to_dict(self) -> Dict[str, Any]:
        return {"domain_order": self.domain_order, "codomain_order": self.codomain_order,
                "image_order": self.image_order, "well_defined": self.well_defined,
                "bijective": self.bijective, "relations_checked": self.relations_checked,
                "presentation": self.presentation_kind}


def verify_isomorphism(hom: GroupHom, presentation: Optional[ConstructivePresentation] = None,
                       config: Optional[EngineConfig] = None) -> VerificationTranscript:
    """
    Check a map is an isomorphism and return the record of the checks

    The graph group decides well-definedness; below the verification
    bound (or when forced) every relation of a constructive presentation
    of the domain is also evaluated on the images.
    """
    cfg = get_config(config)
    transcript = VerificationTranscript(hom.domain.order(), hom.codomain.order(), hom.image().order(),
                                        hom.is_well_defined())
    if not transcript.well_defined:
        raise VerificationError("generator images do not define a homomorphism")
    if not transcript.bijective:
        raise VerificationError(f"map of orders {transcript.domain_order} -> {transcript.image_order} "
                                f"in {transcript.codomain_order} is not bijective")
    if presentation is None and (cfg.always_verify or hom.domain.order() <= cfg.verify_order_bound):
        presentation = constructive_presentation(hom.domain, config=cfg)
    if presentation is not None:
        if presentation.modulus.order() != 1:
            raise PreconditionError("verification needs a presentation of the group itself")
        images = [hom(g) for g in presentation.images]
        identity = hom.codomain.identity
        for rel in presentation.relations:
            if evaluate_word(rel.lhs, images, identity) != evaluate_word(rel.rhs, images, identity):
                raise VerificationError("a defining relation fails on the images")
        transcript.relations_checked = len(presentation.relations)
        transcript.presentation_kind = type(presentation).__name__
    return transcript


def isomorphism_cubefree(group: PermGroup, other: PermGroup,
                         config: Optional[EngineConfig] = None) -> Optional[GroupHom]:
    """
    Isomorphism between two groups of cube-free order, or None

    Raises NotCubefreeError when either order is not cube-free.
    """
    cfg = get_config(config)
    require_cubefree(group.order())
    require_cubefree(other.order())
    if group.order() != other.order():
        return None
    if group.order() == 1:
        return GroupHom(group, other, [other.identity] * len(group.generators))
    dec = cubefree_decomposition(group, cfg)
    dec_t = cubefree_decomposition(other, cfg)
    if dec.simple_part.order() != dec_t.simple_part.order():
        logger.debug("perfect parts differ in order")
        return None
    psi_solvable = lift(dec.solvable_part, dec_t.solvable_part, cfg)
    if psi_solvable is None:
        return None
    sources = list(dec.solvable_part.generators)
    images = [psi_solvable(g) for g in sources]
    if dec.p is not None:
        sigma = psl2_isomorphism(dec.simple_part, cfg)
        sigma_t = psl2_isomorphism(dec_t.simple_part, cfg)
        if sigma is None or sigma_t is None:
            raise StructureError("PSL2 factor not recognised")
        for a in dec.simple_part.generators:
            sources.append(a)
            images.append(sigma_t.preimage_of(sigma(a)))
    hom = GroupHom.from_images(group, other, sources, images, name="isomorphism")
    verify_isomorphism(hom, config=cfg)
    logger.success(f"isomorphism of groups of order {group.order()} verified")
    return hom
