"""
Standard operators on permutation groups: derived series, normal closures,
centralizers, intersections, chief series and Sylow subgroups
"""

import random
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from loguru import logger
from sympy import divisors, factorint

from cubefree.core.config import EngineConfig, get_config
from cubefree.core.errors import (NotCubefreeError, NotSolvableError, NotSubgroupError,
                                  OrderBoundError, PreconditionError, StructureError)
from cubefree.core.homs import CosetCanonizer
from cubefree.core.perm import Permutation, PermGroup, element_centralizer, orbit_stabilizer


def factor_integer(n: int) -> List[Tuple[int, int]]:
    """Prime factorization as increasing (prime, exponent) pairs"""
    return sorted(factorint(n).items())


@dataclass(frozen=True)
class OrderFactorization:
    n: int
    factors: Tuple[Tuple[int, int], ...]

    @classmethod
    def of(cls, n: int) -> "OrderFactorization":
        return cls(n, tuple(factor_integer(n)))

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def is_cubefree(self) -> bool:
        return all(e <= 2 for _, e in self.factors)

    def __str__(self) -> str:
        if self.n == 1:
            return "1"
        body = "·".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        return f"{self.n} = {body}"


def factor_order(group: PermGroup) -> OrderFactorization:
    return OrderFactorization.of(group.order())


def is_cubefree(group: PermGroup) -> bool:
    return factor_order(group).is_cubefree()


def require_cubefree(order: int) -> None:
    for p, e in factor_integer(order):
        if e >= 3:
            raise NotCubefreeError(order, p)


def p_part(element: Permutation, p: int) -> Permutation:
    """Power of element of order the p-part of its order"""
    order = element.order()
    while order % p == 0:
        order //= p
    return element ** order


def element_order_modulo(element: Permutation, normal: PermGroup) -> int:
    """Least k >= 1 with element^k in the normal subgroup"""
    for d in divisors(element.order()):
        if normal.contains(element ** d):
            return d
    raise StructureError("element power never enters the subgroup")


def normal_closure(group: PermGroup, elements: Iterable[Permutation]) -> PermGroup:
    """Smallest normal subgroup of `group` containing `elements`"""
    gens = []
    for x in elements:
        if not group.contains(x):
            raise NotSubgroupError(f"{x} is not in the group")
        if not x.is_identity():
            gens.append(x)
    closure = PermGroup(gens, group.degree)
    changed = bool(gens)
    while changed:
        changed = False
        for g in group.generators:
            for h in closure.generators:
                c = h.conjugate(g)
                if not closure.contains(c):
                    closure = closure.closure([c])
                    changed = True
    return closure


def derived_subgroup(group: PermGroup) -> PermGroup:
    gens = group.generators
    commutators = [a.commutator(b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(group, commutators)


def derived_series(group: PermGroup) -> List[PermGroup]:
    """[G^(1) = G, G^(2), ...] until the series becomes stable"""
    series = [group]
    while True:
        nxt = derived_subgroup(series[-1])
        if nxt.order() == series[-1].order():
            return series
        series.append(nxt)


def is_solvable(group: PermGroup) -> bool:
    return derived_series(group)[-1].order() == 1


def centralizer(group: PermGroup, subgroup: PermGroup) -> PermGroup:
    """C_G(H), intersecting element centralizers one generator at a time"""
    if not subgroup.is_subgroup_of(group):
        raise NotSubgroupError("centralized group is not a subgroup")
    result = group
    for h in subgroup.generators:
        if all(h * g == g * h for g in result.generators):
            continue
        result = element_centralizer(result, h)
    return result


def center(group: PermGroup) -> PermGroup:
    return centralizer(group, group)


def intersection(group: PermGroup, first: PermGroup, second: PermGroup) -> PermGroup:
    """first ∩ second, both subgroups of `group`"""
    if first.order() > second.order():
        first, second = second, first
    if second.order() == group.order():
        return first
    canonizer = CosetCanonizer(second, group.base)
    start = canonizer.canonical(group.identity)[0]
    _, stabilizer = orbit_stabilizer(first, start, lambda x, u: canonizer.canonical(x * u)[0])
    return stabilizer


def is_elementary_abelian(group: PermGroup, p: int) -> bool:
    return group.is_abelian() and all((g ** p).is_identity() for g in group.generators)


@dataclass
class ChiefSeries:
    """
    Chief series 1 = N_0 < N_1 < ... < N_r = L, stored ascending

    factor_data[i] = (p, f) describes N_{i+1}/N_i of order p^f.
    """

    terms: List[PermGroup]
    factor_data: List[Tuple[int, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.factor_data)

    def descending(self) -> List[PermGroup]:
        return list(reversed(self.terms))


def _minimal_normal_in_section(group: PermGroup, lower: PermGroup, upper: PermGroup) -> Tuple[PermGroup, int, int]:
    """
    A subgroup E with lower < E <= upper and E/lower minimal normal in G/lower

    upper/lower must be abelian with both terms normal in G; the smallest
    prime dividing the section is used first.
    """
    index = upper.order() // lower.order()
    p = factor_integer(index)[0][0]
    y = None
    for g in upper.generators:
        k = element_order_modulo(g, lower)
        if k % p == 0:
            y = g ** (k // p)
            break
    if y is None:
        raise StructureError("no element of prime order in an abelian section")
    module = normal_closure(group, list(lower.generators) + [y])
    rank = 0
    size = module.order() // lower.order()
    while size > 1:
        size //= p
        rank += 1
    if rank == 1:
        return module, p, 1
    if rank > 2:
        raise NotCubefreeError(group.order(), p)
    line = lower.closure([y])
    z = next(g for g in module.generators if not line.contains(g))
    candidates = [line] + [lower.closure([y ** i * z]) for i in range(p)]
    for candidate in candidates:
        if candidate.is_normal_in(group):
            return candidate, p, 1
    return module, p, 2


def chief_series(group: PermGroup) -> ChiefSeries:
    """Chief series of a solvable group, refining the derived series from the bottom"""
    derived = derived_series(group)
    if derived[-1].order() != 1:
        raise NotSolvableError("chief series requires a solvable group")
    current = PermGroup.trivial(group.degree)
    series = ChiefSeries([current])
    for upper in reversed(derived[:-1]):
        while current.order() < upper.order():
            current, p, f = _minimal_normal_in_section(group, current, upper)
            series.terms.append(current)
            series.factor_data.append((p, f))
    logger.trace(f"chief series factors {series.factor_data}")
    return series


def _random_p_element(group: PermGroup, p: int, rng: random.Random, cfg: EngineConfig) -> Permutation:
    for _ in range(cfg.sylow_random_tries):
        g = group.random_element(rng)
        if g.order() % p == 0:
            return p_part(g, p)
    if group.order() > cfg.sylow_exhaustive_bound:
        raise OrderBoundError(f"no {p}-element found by random search in a group of order {group.order()}")
    for g in group.elements():
        if g.order() % p == 0:
            return p_part(g, p)
    raise StructureError(f"group has no element of order {p}")


def sylow_subgroup(group: PermGroup, p: int, config: Optional[EngineConfig] = None) -> PermGroup:
    """
    A Sylow p-subgroup of a group whose p-part is at most p^2

    Starts from a random p-element x; when x does not already generate a
    Sylow subgroup the missing generator is taken from C_G(x), which
    contains every abelian Sylow subgroup through x.
    """
    cfg = get_config(config)
    order = group.order()
    exponent = 0
    n = order
    while n % p == 0:
        n //= p
        exponent += 1
    if exponent == 0:
        raise PreconditionError(f"{p} does not divide the group order {order}")
    if exponent > 2:
        raise NotCubefreeError(order, p)
    target = p ** exponent
    if target == order:
        return group
    rng = random.Random(cfg.random_seed * 1000003 + p)
    x = _random_p_element(group, p, rng, cfg)
    if x.order() == target:
        return PermGroup([x], group.degree, order_hint=target)
    cent = element_centralizer(group, x)
    cyclic = PermGroup([x], group.degree)
    for _ in range(cfg.sylow_random_tries):
        z = cent.random_element(rng)
        if z.order() % p:
            continue
        z = p_part(z, p)
        if not cyclic.contains(z):
            return PermGroup([x, z], group.degree, order_hint=target)
    for z in cent.elements():
        if z.order() % p == 0 and not cyclic.contains(p_part(z, p)):
            return PermGroup([x, p_part(z, p)], group.degree, order_hint=target)
    raise StructureError(f"Sylow {p}-subgroup not found")


def conjugacy_classes(group: PermGroup) -> List[Tuple[Permutation, int]]:
    """(least element, class size) for every class, by enumeration"""
    remaining = set(group.elements())
    classes = []
    gens = group.generators
    for x in sorted(remaining):
        if x not in remaining:
            continue
        orbit = [x]
        remaining.discard(x)
        for y in orbit:
            for g in gens:
                c = y.conjugate(g)
                if c in remaining:
                    remaining.discard(c)
                    orbit.append(c)
        classes.append((min(orbit), len(orbit)))
    return classes


def order_statistics(group: PermGroup) -> Tuple[Tuple[int, int], ...]:
    """Sorted (element order, count) pairs, by enumeration"""
    counts = {}
    for g in group.elements():
        o = g.order()
        counts[o] = counts.get(o, 0) + 1
    return tuple(sorted(counts.items()))


def hall_system(group: PermGroup, config: Optional[EngineConfig] = None) -> List[PermGroup]:
    """Hall p'-subgroups Q_p, one per prime in Sylow tower order, from an abelian Sylow tower"""
    from cubefree.core.structure import sylow_tower

    tower = sylow_tower(group, config)
    return [tower.hall_subgroup(p) for p in tower.primes]
