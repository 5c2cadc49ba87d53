"""
Isomorphisms of solvable groups of cube-free order

Frattini-free groups are compared through the conjugacy of their socle
complements in Aut(B × C). Groups with a nontrivial Frattini subgroup are
handled by a ladder of quotients by Frattini factors of prime order: an
isomorphism at the top is lifted one cyclic factor at a time.
"""

import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

from loguru import logger

from cubefree.core.config import EngineConfig, get_config
from cubefree.core.errors import PreconditionError, StructureError, VerificationError
from cubefree.core.gl2 import conjugate_in_gl_products
from cubefree.core.grouptheory import factor_integer, intersection, sylow_subgroup
from cubefree.core.homs import CosetQuotient, GroupHom, quotient
from cubefree.core.perm import Permutation, PermGroup
from cubefree.core.structure import (SylowTower, frattini, frattini_free_decomposition, omega_complement_abelian,
                                     sylow_tower)


def _trivial_hom(domain: PermGroup, codomain: PermGroup) -> GroupHom:
    return GroupHom(domain, codomain, [codomain.identity] * len(domain.generators))


def frattini_free_isomorphism(group: PermGroup, other: PermGroup,
                              config: Optional[EngineConfig] = None) -> Optional[GroupHom]:
    """
    Isomorphism of Frattini-free solvable groups, or None

    The groups are isomorphic exactly when their socles have the same
    signature and the complements K, K~ are conjugate in Aut(B × C) by
    some alpha; the isomorphism is then k -> alpha^-1 k alpha on K and
    v -> v alpha on socle coordinates.
    """
    cfg = get_config(config)
    if group.order() != other.order():
        return None
    if group.order() == 1:
        return _trivial_hom(group, other)
    dec = frattini_free_decomposition(group, cfg)
    dec_t = frattini_free_decomposition(other, cfg)
    if dec.signature != dec_t.signature or dec.complement.order() != dec_t.complement.order():
        logger.debug(f"socle signatures {dec.signature} and {dec_t.signature} differ")
        return None
    alpha = conjugate_in_gl_products(dec.representation(), dec_t.representation(), dec.signature)
    if alpha is None:
        logger.debug("socle complements are not conjugate")
        return None
    lookup = {dec_t.matrix_of(k): k for k in dec_t.complement.elements()}
    sources: List[Permutation] = []
    images: List[Permutation] = []
    for k in dec.complement.generators:
        sources.append(k)
        images.append(lookup[dec.matrix_of(k).conjugate(alpha)])
    for j, (factor, factor_t) in enumerate(zip(dec.factors, dec_t.factors)):
        a = alpha.components[j]
        for i, b in enumerate(factor.coords.basis):
            unit = tuple(int(i == r) for r in range(factor.dim))
            sources.append(b)
            images.append(factor_t.coords.element(a.act(unit)))
    hom = GroupHom.from_images(group, other, sources, images)
    if not hom.is_isomorphism():
        raise VerificationError("Frattini-free map is not bijective")
    return hom


def sylow_pair_conforms(sylow: PermGroup, cyclic: PermGroup, bottom: PermGroup) -> bool:
    """
    Checks how a Sylow subgroup P meets a cyclic Sylow subgroup Q of order q^2

    `bottom` is the subgroup of order q of Q. One of P, Q must normalize the
    other. When P is normal in PQ the bottom acts trivially on P; when Q is
    normal, P raises a generator w of Q to a power k with k^(q-1) = 1 mod
    q^2, so the action is fixed by the action on Q/bottom.
    """
    q2 = cyclic.order()
    w = next((g for g in cyclic.elements() if g.order() == q2), None)
    if w is None:
        return False
    p_normal = _normalizes(cyclic, sylow)
    q_normal = _normalizes(sylow, cyclic)
    if not (p_normal or q_normal):
        return False
    if p_normal and not all(z * g == g * z for z in bottom.generators for g in sylow.generators):
        return False
    if q_normal:
        q = bottom.order()
        for g in sylow.generators:
            moved = w.conjugate(g)
            k = next((k for k in range(1, q2) if w ** k == moved), None)
            if k is None or pow(k, q - 1, q2) != 1:
                return False
    return True


def _normalizes(acting: PermGroup, subgroup: PermGroup) -> bool:
    return all(subgroup.contains(h.conjugate(g)) for g in acting.generators for h in subgroup.generators)


def _cyclic_sylow_over(group: PermGroup, p: int, bottom: PermGroup, cfg: EngineConfig) -> bool:
    """Sylow p-subgroup is cyclic of order p^2 with `bottom` as its subgroup of order p"""
    sylow = sylow_subgroup(group, p, cfg)
    if sylow.order() != p * p:
        return False
    generator = next((g for g in sylow.generators if g.order() == p * p), None)
    return generator is not None and bottom.contains(generator ** p)


def _quotient_sylows_match(factor: CosetQuotient, p: int, cfg: EngineConfig) -> bool:
    """Sylow p-subgroup of the quotient has order p; the others keep order and cyclicity"""
    top = factor.parent
    for q, _ in factor_integer(top.order()):
        if q == p:
            continue
        upper = sylow_subgroup(top, q, cfg)
        lower = sylow_subgroup(factor.quotient, q, cfg)
        if lower.order() != upper.order():
            return False
        cyclic = [any(g.order() == y.order() for g in y.generators) for y in (upper, lower)]
        if cyclic[0] != cyclic[1]:
            return False
    return factor.quotient.order() % (p * p) != 0


@dataclass
class LiftContext:
    """
    Matched Sylow bases of Y* and Y~* above prime-order Frattini factors

    `basis[k]` and `basis_t[k]` are Sylow subgroups for `primes[k]`;
    position `index` holds the cyclic Sylow p-subgroups generated by
    `generator` and `generator_t`. `hall` and `hall_t` are the Hall
    p'-subgroups, the latter a complement to A~ in the preimage of the
    image of H.
    """

    factor: CosetQuotient
    factor_t: CosetQuotient
    phi: GroupHom
    tower: SylowTower
    index: int
    generator: Permutation
    generator_t: Permutation
    hall: PermGroup
    hall_t: PermGroup
    basis: List[PermGroup]
    basis_t: List[PermGroup]

    @property
    def prime(self) -> int:
        return self.factor.kernel.order()

    @property
    def primes(self) -> List[int]:
        return self.tower.primes

    def compatible(self) -> bool:
        """Y~_u normalizes Y~_v exactly when Y_u normalizes Y_v"""
        pairs = [(u, v) for u in range(len(self.basis)) for v in range(len(self.basis)) if u != v]
        return all(_normalizes(self.basis[u], self.basis[v]) == _normalizes(self.basis_t[u], self.basis_t[v])
                   for u, v in pairs)

    def image_in(self, element: Permutation, target: PermGroup) -> Permutation:
        """The element of `target` above the image of `element` under phi"""
        section = self.factor_t.section(self.phi(self.factor.project(element)))
        for z in sorted(self.factor_t.kernel.elements()):
            if target.contains(section * z):
                return section * z
        raise StructureError("no preimage in the matched Sylow subgroup")

    def homomorphism(self) -> GroupHom:
        sources: List[Permutation] = []
        images: List[Permutation] = []
        for k, (y, y_t) in enumerate(zip(self.basis, self.basis_t)):
            if k == self.index:
                continue
            for h in y.generators:
                sources.append(h)
                images.append(self.image_in(h, y_t))
        sources.append(self.generator)
        images.append(self.generator_t)
        return GroupHom.from_images(self.factor.parent, self.factor_t.parent, sources, images)


def _pulled_back(factor: CosetQuotient, factor_t: CosetQuotient, phi: GroupHom, subgroup: PermGroup) -> PermGroup:
    image = PermGroup([phi(factor.project(g)) for g in subgroup.generators], factor_t.quotient.degree)
    return factor_t.lift_subgroup(image)


def _intersect_all(ambient: PermGroup, subgroups: List[PermGroup]) -> PermGroup:
    if not subgroups:
        return ambient
    result = subgroups[0]
    for sub in subgroups[1:]:
        result = intersection(ambient, result, sub)
    return result


def lift_context(factor: CosetQuotient, factor_t: CosetQuotient, phi: GroupHom,
                 config: Optional[EngineConfig] = None) -> Optional[LiftContext]:
    """
    Sylow bases for lifting phi over prime-order Frattini factors, or None

    None means the factors do not have the shape a Frattini factor of a
    cube-free group has: a Sylow p-subgroup that is not cyclic of order p^2
    over A, a Sylow pair violating `sylow_pair_conforms`, or bases whose
    normalizing pattern differs.
    """
    cfg = get_config(config)
    top, top_t = factor.parent, factor_t.parent
    bottom, bottom_t = factor.kernel, factor_t.kernel
    p = bottom.order()
    if p != bottom_t.order() or len(factor_integer(p)) != 1 or factor_integer(p)[0][1] != 1:
        raise PreconditionError("lifting needs kernels of the same prime order")
    if top.order() != top_t.order():
        raise PreconditionError("lifting needs groups of the same order")
    if not (_cyclic_sylow_over(top, p, bottom, cfg) and _cyclic_sylow_over(top_t, p, bottom_t, cfg)):
        logger.debug(f"Sylow {p}-subgroup is not cyclic of order {p * p} over the Frattini factor")
        return None
    if not (_quotient_sylows_match(factor, p, cfg) and _quotient_sylows_match(factor_t, p, cfg)):
        logger.debug("Sylow subgroups of the quotient do not match those above it")
        return None

    tower = sylow_tower(top, cfg)
    index = tower.primes.index(p)
    basis = [y for _, y in tower.factors]
    a = next(g for g in basis[index].elements() if g.order() == p * p)
    for k, y in enumerate(basis):
        if k != index and not sylow_pair_conforms(y, basis[index], bottom):
            logger.debug(f"Sylow {tower.primes[k]}-subgroup and the cyclic Sylow {p}-subgroup do not conform")
            return None

    halls = [tower.hall_subgroup(q) for q in tower.primes]
    halls_t = [_pulled_back(factor, factor_t, phi, q) for q in halls]
    hall = halls[index]
    if hall.order() == 1:
        hall_t = PermGroup.trivial(top_t.degree)
    else:
        certificate = omega_complement_abelian(halls_t[index], bottom_t, config=cfg)
        if certificate is None:
            raise StructureError("Hall subgroup preimage does not split over the Frattini factor")
        hall_t = certificate.complement
    basis_t: List[PermGroup] = []
    for k in range(len(basis)):
        if k == index:
            basis_t.append(_intersect_all(top_t, [q for j, q in enumerate(halls_t) if j != k]))
        else:
            basis_t.append(_intersect_all(top_t, [hall_t] + [q for j, q in enumerate(halls_t) if j not in (k, index)]))
        if basis_t[-1].order() != basis[k].order():
            raise StructureError(f"matched Sylow {tower.primes[k]}-subgroup has order {basis_t[-1].order()}")

    coset = [factor_t.section(phi(factor.project(a))) * z for z in bottom_t.elements()]
    a_t = min(coset)
    if not basis_t[index].contains(a_t) or a_t.order() != p * p:
        logger.debug(f"preimage of the image of a has order {a_t.order()}")
        return None
    ctx = LiftContext(factor, factor_t, phi, tower, index, a, a_t, hall, hall_t, basis, basis_t)
    if not ctx.compatible():
        logger.debug("matched Sylow bases normalize each other differently")
        return None
    for k, y in enumerate(basis_t):
        if k != index and not sylow_pair_conforms(y, basis_t[index], bottom_t):
            logger.debug(f"matched Sylow {tower.primes[k]}-subgroup does not conform")
            return None
    return ctx


def cyclic_lift(factor: CosetQuotient, factor_t: CosetQuotient, phi: GroupHom,
                config: Optional[EngineConfig] = None) -> Optional[GroupHom]:
    """
    Lift an isomorphism Y*/A -> Y~*/A~ to Y* -> Y~*, or None

    A and A~ have prime order p and lie in the Frattini subgroups. A
    Sylow basis of Y* is carried over to Y~* through phi: the Hall
    subgroups pull back along the projection, the Hall p'-subgroup is
    split off A~, and the Sylow subgroups are intersections of Hall
    subgroups. Each Sylow q-subgroup for q != p maps through the
    quotients and the generator a of the cyclic Sylow p-subgroup goes to
    the least preimage of its image. None is returned when the Sylow
    structure of either group rules out a Frattini factor.
    """
    cfg = get_config(config)
    ctx = lift_context(factor, factor_t, phi, cfg)
    if ctx is None:
        return None
    try:
        hom = ctx.homomorphism()
    except VerificationError as exc:
        raise StructureError(f"matched Sylow bases do not give a homomorphism: {exc}") from exc
    if hom.image().order() != factor_t.parent.order():
        raise StructureError("lifted map is not surjective")
    logger.debug(f"lifted over a Frattini factor of order {ctx.prime} along the tower {ctx.primes}")
    return hom


def _frattini_parts(frat: PermGroup) -> List[Tuple[int, PermGroup]]:
    order = frat.order()
    parts = []
    for p, e in factor_integer(order):
        if e != 1:
            raise StructureError(f"Frattini subgroup has {p}-part of order {p ** e}")
        parts.append((p, PermGroup([g ** (order // p) for g in frat.generators], frat.degree, order_hint=p)))
    return parts


def frattini_ladder(group: PermGroup, config: Optional[EngineConfig] = None
                    ) -> Tuple[List[int], List[CosetQuotient]]:
    """Quotients by the prime-order Frattini factors, one prime at a time, largest prime first"""
    cfg = get_config(config)
    parts = _frattini_parts(frattini(group, cfg))
    parts.sort(key=lambda item: -item[0])
    primes: List[int] = []
    steps: List[CosetQuotient] = []
    current = group
    pending = [sub for _, sub in parts]
    for index, (p, _) in enumerate(parts):
        step = quotient(current, pending[index], config=cfg)
        pending = [step.project_subgroup(sub) if k > index else sub for k, sub in enumerate(pending)]
        primes.append(p)
        steps.append(step)
        current = step.quotient
    return primes, steps


def lift(group: PermGroup, other: PermGroup, config: Optional[EngineConfig] = None) -> Optional[GroupHom]:
    """
    Isomorphism of solvable groups of cube-free order, or None

    Both groups are reduced to their Frattini-free quotients along the
    same primes; an isomorphism there is lifted back up the ladder.
    """
    cfg = get_config(config)
    if group.order() != other.order():
        return None
    primes, steps = frattini_ladder(group, cfg)
    primes_t, steps_t = frattini_ladder(other, cfg)
    if primes != primes_t:
        logger.debug(f"Frattini subgroups differ: primes {primes} vs {primes_t}")
        return None
    top = steps[-1].quotient if steps else group
    top_t = steps_t[-1].quotient if steps_t else other
    phi = frattini_free_isomorphism(top, top_t, cfg)
    if phi is None:
        return None
    for step, step_t in zip(reversed(steps), reversed(steps_t)):
        phi = cyclic_lift(step, step_t, phi, cfg)
        if phi is None:
            return None
    return phi


def frattini_factorization_holds(hom: GroupHom, factor: CosetQuotient, factor_t: CosetQuotient,
                                 phi: GroupHom, samples: int = 50, seed: int = 0) -> bool:
    """Checks that hom followed by the projection equals the projection followed by phi"""
    rng = random.Random(seed)
    for _ in range(samples):
        g = factor.parent.random_element(rng)
        if factor_t.project(hom(g)) != phi(factor.project(g)):
            return False
    return True
