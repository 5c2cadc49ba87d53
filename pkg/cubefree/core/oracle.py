"""
Brute-force ground truth for small groups

Everything here enumerates elements or subgroups and is meant for orders
up to a few thousand: isomorphism by backtracking over generator images,
lifts of quotient isomorphisms over all preimage choices,
subgroup lattices, Frattini subgroups, socles and complements, scrambled
copies and small-degree representations of groups of square-free order.
"""

import random
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from loguru import logger

from cubefree.core.config import EngineConfig, get_config
from cubefree.core.errors import OrderBoundError, PreconditionError, VerificationError
from cubefree.core.gl2 import group_closure
from cubefree.core.grouptheory import center, derived_series, factor_integer, order_statistics
from cubefree.core.homs import CosetQuotient, GroupHom, coset_action, graph_order
from cubefree.core.modp import GLProductElement, gl_elements
from cubefree.core.perm import Permutation, PermGroup

Subgroup = FrozenSet[Permutation]


def small_generating_set(group: PermGroup) -> List[Permutation]:
    gens: List[Permutation] = []
    span = PermGroup.trivial(group.degree)
    candidates = list(group.generators) + group.strong_generators
    for g in candidates:
        if span.order() == group.order():
            break
        if not span.contains(g):
            gens.append(g)
            span = PermGroup(gens, group.degree)
    return gens


def invariants(group: PermGroup) -> Tuple:
    """Cheap isomorphism invariants: order statistics, centre order and derived series orders"""
    return (group.order(), order_statistics(group), center(group).order(),
            tuple(term.order() for term in derived_series(group)))


def brute_force_isomorphism(group: PermGroup, other: PermGroup,
                            config: Optional[EngineConfig] = None) -> Optional[GroupHom]:
    """
    Isomorphism by backtracking over generator images, or None

    Images of a small generating set are tried among elements of matching
    order; each partial assignment must extend to a homomorphism of the
    subgroup generated so far.
    """
    cfg = get_config(config)
    n = group.order()
    if n > cfg.oracle_limit or other.order() > cfg.oracle_limit:
        raise OrderBoundError(f"brute-force isomorphism is limited to order {cfg.oracle_limit}")
    if n != other.order():
        return None
    if n == 1:
        return GroupHom(group, other, [other.identity] * len(group.generators))
    if order_statistics(group) != order_statistics(other):
        return None
    gens = small_generating_set(group)
    by_order: Dict[int, List[Permutation]] = {}
    for h in other.elements():
        by_order.setdefault(h.order(), []).append(h)
    prefix_orders = [PermGroup(gens[:k + 1], group.degree).order() for k in range(len(gens))]

    def search(k: int, images: List[Permutation]) -> Optional[List[Permutation]]:
        if k == len(gens):
            return images
        for h in by_order.get(gens[k].order(), []):
            trial = images + [h]
            if graph_order(gens[:k + 1], trial) != prefix_orders[k]:
                continue
            if k == len(gens) - 1 and PermGroup(trial, other.degree).order() != n:
                continue
            found = search(k + 1, trial)
            if found is not None:
                return found
        return None

    images = search(0, [])
    if images is None:
        return None
    return GroupHom.from_images(group, other, gens, images, name="brute-force")


def exhaustive_lift(factor: CosetQuotient, factor_t: CosetQuotient, phi: GroupHom,
                    config: Optional[EngineConfig] = None) -> Optional[GroupHom]:
    """
    An isomorphism Y* -> Y~* inducing phi on the quotients, or None

    Every choice of preimages of the generator images is tried.
    """
    cfg = get_config(config)
    top, top_t = factor.parent, factor_t.parent
    if top.order() > cfg.oracle_limit:
        raise OrderBoundError(f"exhaustive lifting is limited to order {cfg.oracle_limit}")
    if top.order() != top_t.order():
        return None
    gens = small_generating_set(top)
    kernel = sorted(factor_t.kernel.elements())
    cosets = [[factor_t.section(phi(factor.project(g))) * z for z in kernel] for g in gens]
    for images in product(*cosets):
        try:
            hom = GroupHom.from_images(top, top_t, gens, list(images), name="exhaustive lift")
        except VerificationError:
            continue
        if hom.image().order() == top_t.order():
            return hom
    return None


@dataclass
class ScrambledGroup:
    group: PermGroup
    hidden: GroupHom
    seed: int


SCRAMBLE_REPRESENTATIONS = ("relabel", "regular", "coset")


def _faithful_coset_action(group: PermGroup, rng: random.Random, cfg: EngineConfig,
                           tries: int = 20) -> Optional[GroupHom]:
    """Action on the cosets of a random core-free cyclic subgroup of prime order, or None"""
    n = group.order()
    for _ in range(tries):
        g = group.random_element(rng)
        if g.is_identity():
            continue
        p = factor_integer(g.order())[-1][0]
        h = g ** (g.order() // p)
        if n // p > cfg.regular_quotient_limit:
            continue
        action = coset_action(group, group.subgroup([h]), cfg)
        if action.image().order() == n:
            return action
    return None


def scramble(group: PermGroup, seed: int, extra_points: int = 0, representation: Optional[str] = None,
             config: Optional[EngineConfig] = None) -> ScrambledGroup:
    """
    Isomorphic copy with new random generators on relabelled points

    `representation` picks the copy's action: "relabel" keeps the points,
    "regular" acts on the group itself and "coset" on the cosets of a
    core-free subgroup of prime order. By default one is drawn from the
    seed; the regular and coset actions are used only up to
    `regular_quotient_limit` points and fall back to relabelling.
    `extra_points` appends fixed points so the copy also differs in degree.
    The hidden isomorphism maps each element to its image in the copy.
    """
    cfg = get_config(config)
    rng = random.Random(seed)
    if representation is None:
        representation = rng.choice(SCRAMBLE_REPRESENTATIONS)
    if representation not in SCRAMBLE_REPRESENTATIONS:
        raise PreconditionError(f"unknown representation {representation!r}")
    order = group.order()
    action: Optional[GroupHom] = None
    if representation == "regular" and 1 < order <= cfg.regular_quotient_limit:
        action = coset_action(group, PermGroup.trivial(group.degree), cfg)
    elif representation == "coset" and order > 1:
        action = _faithful_coset_action(group, rng, cfg)
    if action is None:
        base_images, base_degree = list(group.generators), group.degree
    else:
        base_images, base_degree = list(action.gen_images), action.codomain.degree
    degree = base_degree + extra_points
    labels = list(range(degree))
    rng.shuffle(labels)
    relabel = Permutation(labels)
    images = [g.extend(degree).conjugate(relabel) for g in base_images]
    target = PermGroup(images, degree, order_hint=order)
    gens: List[Permutation] = []
    span = PermGroup.trivial(degree)
    while span.order() < order:
        g = target.random_element(rng)
        if not span.contains(g):
            gens.append(g)
            span = PermGroup(gens, degree)
    if not gens:
        gens = [Permutation.identity(degree)]
    copy = PermGroup(gens, degree, name=f"scrambled({group.name or 'G'}, {seed})", order_hint=order)
    logger.debug(f"scrambled a group of order {order} onto {degree} points ({representation})")
    return ScrambledGroup(copy, GroupHom(group, copy, images, name="hidden"), seed)


def squarefree_representation(a: int, b: int, action: Optional[Dict[int, int]] = None) -> PermGroup:
    """
    C_a ⋉ C_b on the sum of the primes dividing ab

    `action[q]` is the unit by which the generator of C_a raises the
    generator of C_q for each prime q | b (default 1). C_b acts by one
    q-cycle per prime; C_a acts on those points by the affine maps
    i -> r i and by one cycle per prime of a on its own points.
    """
    if any(e > 1 for _, e in factor_integer(a * b)):
        raise PreconditionError(f"{a}·{b} is not square-free")
    action = action or {}
    b_primes = [q for q, _ in factor_integer(b)]
    a_primes = [q for q, _ in factor_integer(a)]
    for q, r in action.items():
        if q not in b_primes:
            raise PreconditionError(f"{q} does not divide {b}")
        if r % q == 0 or pow(r, a, q) != 1:
            raise PreconditionError(f"{r} does not define an action of C_{a} on C_{q}")
    degree = sum(b_primes) + sum(a_primes)
    top: List[int] = []
    cycles: List[Permutation] = []
    offset = 0
    for q in b_primes:
        r = action.get(q, 1)
        top.extend(offset + (r * i) % q for i in range(q))
        images = list(range(degree))
        for i in range(q):
            images[offset + i] = offset + (i + 1) % q
        cycles.append(Permutation(images))
        offset += q
    for q in a_primes:
        top.extend(offset + (i + 1) % q for i in range(q))
        offset += q
    gens = ([Permutation(top)] if a > 1 else []) + cycles
    if not gens:
        return PermGroup.trivial(max(degree, 1))
    return PermGroup(gens, degree, name=f"C{a}⋉C{b}", order_hint=a * b)


def holder_groups(n: int, config: Optional[EngineConfig] = None) -> List[PermGroup]:
    """All groups of square-free order n up to isomorphism, each as C_a ⋉ C_b"""
    if any(e > 1 for _, e in factor_integer(n)):
        raise PreconditionError(f"{n} is not square-free")
    candidates: List[PermGroup] = []
    primes = [q for q, _ in factor_integer(n)]
    for mask in range(1 << len(primes)):
        b_primes = [q for i, q in enumerate(primes) if mask >> i & 1]
        b = 1
        for q in b_primes:
            b *= q
        a = n // b
        choices: List[List[int]] = []
        for q in b_primes:
            choices.append([r for r in range(1, q) if pow(r, a, q) == 1])
        for picks in product(*choices):
            action = dict(zip(b_primes, picks))
            candidates.append(squarefree_representation(a, b, action))
    return deduplicate(candidates, config)


def deduplicate(groups: Sequence[PermGroup], config: Optional[EngineConfig] = None) -> List[PermGroup]:
    """Pairwise non-isomorphic representatives, first occurrence kept"""
    buckets: Dict[Tuple, List[PermGroup]] = {}
    kept: List[PermGroup] = []
    for g in groups:
        key = invariants(g)
        bucket = buckets.setdefault(key, [])
        if any(brute_force_isomorphism(h, g, config) is not None for h in bucket):
            continue
        bucket.append(g)
        kept.append(g)
    logger.debug(f"kept {len(kept)} of {len(groups)} groups up to isomorphism")
    return kept


def subgroup_lattice(group: PermGroup, config: Optional[EngineConfig] = None) -> List[Subgroup]:
    """
    Every subgroup as a frozen set of elements

    Starts from the cyclic subgroups and closes under joins.
    """
    cfg = get_config(config)
    if group.order() > cfg.lattice_bound:
        raise OrderBoundError(f"subgroup lattices are limited to order {cfg.lattice_bound}")
    identity = group.identity
    cyclic: Dict[Subgroup, Permutation] = {}
    for g in group.elements():
        powers = frozenset(g ** k for k in range(g.order()))
        cyclic.setdefault(powers, g)
    gens_of: Dict[Subgroup, List[Permutation]] = {frozenset([identity]): []}
    for sub, g in cyclic.items():
        gens_of.setdefault(sub, [g])
    frontier = list(gens_of)
    while frontier:
        new: List[Subgroup] = []
        for sub in frontier:
            for cyc, g in cyclic.items():
                if cyc <= sub:
                    continue
                joined = frozenset(PermGroup(gens_of[sub] + [g], group.degree).elements())
                if joined not in gens_of:
                    gens_of[joined] = gens_of[sub] + [g]
                    new.append(joined)
        frontier = new
    return sorted(gens_of, key=len)


def _is_normal(sub: Subgroup, group: PermGroup) -> bool:
    return all(h.conjugate(g) in sub for g in group.generators for h in sub)


def _as_group(sub: Subgroup, degree: int) -> PermGroup:
    return PermGroup(sorted(sub), degree, order_hint=len(sub))


def exhaustive_frattini(group: PermGroup, config: Optional[EngineConfig] = None) -> PermGroup:
    """Intersection of the maximal subgroups"""
    lattice = subgroup_lattice(group, config)
    n = group.order()
    proper = [s for s in lattice if len(s) < n]
    maximal = [s for s in proper if not any(len(t) > len(s) and s < t for t in proper)]
    result = frozenset(group.elements())
    for s in maximal:
        result &= s
    return _as_group(result, group.degree)


def exhaustive_socle(group: PermGroup, config: Optional[EngineConfig] = None) -> PermGroup:
    """Subgroup generated by the minimal normal subgroups"""
    normals = [s for s in subgroup_lattice(group, config) if len(s) > 1 and _is_normal(s, group)]
    minimal = [s for s in normals if not any(t < s for t in normals)]
    gens = [g for s in minimal for g in s]
    return PermGroup(gens, group.degree)


def exhaustive_complements(group: PermGroup, normal: PermGroup,
                           config: Optional[EngineConfig] = None) -> List[PermGroup]:
    """Every complement of a normal subgroup"""
    members = frozenset(normal.elements())
    target = group.order() // normal.order()
    found = [s for s in subgroup_lattice(group, config) if len(s) == target and len(s & members) == 1]
    return [_as_group(s, group.degree) for s in found]


def minimal_normal_subgroups(group: PermGroup, config: Optional[EngineConfig] = None) -> List[PermGroup]:
    normals = [s for s in subgroup_lattice(group, config) if len(s) > 1 and _is_normal(s, group)]
    return [_as_group(s, group.degree) for s in normals if not any(t < s for t in normals)]


def exhaustive_gl_conjugator(generators: Sequence[GLProductElement], target_generators: Sequence[GLProductElement],
                             signature: Sequence[Tuple[int, int]]) -> Optional[GLProductElement]:
    """Conjugator in a product of GL factors by running through the whole product"""
    identity = GLProductElement.identity(signature)
    source = group_closure(generators, identity)
    target = set(group_closure(target_generators, identity))
    if len(source) != len(target):
        return None
    for parts in product(*[list(gl_elements(p, d)) for p, d in signature]):
        g = GLProductElement(tuple(parts))
        if {k.conjugate(g) for k in source} == target:
            return g
    return None
