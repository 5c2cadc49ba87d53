"""
Structural toolkit for solvable groups of cube-free order

Complements of abelian normal subgroups are found by solving a linear
system over the module, one prime component at a time. Everything else
(direct complements, Sylow towers, socles, Frattini-free decompositions)
is built on top of that.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from cubefree.core.config import EngineConfig, get_config
from cubefree.core.errors import (NotNormalError, NotSolvableError, NotSubgroupError, PreconditionError,
                                  StructureError)
from cubefree.core.grouptheory import (centralizer, chief_series, factor_integer, intersection, is_solvable,
                                       sylow_subgroup)
from cubefree.core.homs import CosetQuotient, quotient
from cubefree.core.modp import FpMatrix, GLProductElement, solve_linear_system
from cubefree.core.perm import Permutation, PermGroup
from cubefree.core.presentations import ConstructivePresentation, constructive_presentation
from cubefree.core.slp import Word

Automorphism = Callable[[Permutation], Permutation]


@dataclass
class OmegaAction:
    """Symbols acting on a group through automorphisms given as callables"""

    symbols: List[str] = field(default_factory=list)
    maps: List[Automorphism] = field(default_factory=list)

    @classmethod
    def by_conjugation(cls, elements: Sequence[Permutation]) -> "OmegaAction":
        return cls([f"c{i + 1}" for i in range(len(elements))],
                   [lambda x, g=g: x.conjugate(g) for g in elements])

    def __len__(self) -> int:
        return len(self.maps)

    def is_invariant(self, subgroup: PermGroup) -> bool:
        return all(subgroup.contains(f(h)) for f in self.maps for h in subgroup.generators)

    def induced(self, factor: CosetQuotient) -> "OmegaAction":
        """Action on G/N of an action on G leaving N invariant"""
        return OmegaAction(list(self.symbols),
                           [lambda q, f=f: factor.project(f(factor.section(q))) for f in self.maps])


class ModuleCoordinates:
    """
    Coordinates on the p-primary part of an abelian group

    The part is cyclic of order p or p^2 (coordinates mod p or p^2, one
    basis element) or elementary abelian of order p^2 (coordinates mod p,
    two basis elements). Coordinates are found by table lookup.
    """

    def __init__(self, module: PermGroup, p: int):
        self.p = p
        order = module.order()
        size = 1
        while order % p == 0:
            order //= p
            size *= p
        self.size = size
        self._cofactor = order
        self._idempotent = order * pow(order, -1, size)
        part = PermGroup([g ** order for g in module.generators], module.degree, order_hint=size)
        self.part = part
        elements = list(part.elements())
        cyclic = next((g for g in elements if g.order() == size), None)
        if cyclic is not None:
            self.modulus = size
            self.basis = [cyclic]
        else:
            first = next(g for g in elements if not g.is_identity())
            line = {first ** i for i in range(p)}
            second = next(g for g in elements if g not in line)
            self.modulus = p
            self.basis = [first, second]
        self._table: Dict[Permutation, Tuple[int, ...]] = {}
        if self.dim == 1:
            power = part.identity
            for i in range(size):
                self._table[power] = (i,)
                power = power * self.basis[0]
        else:
            for i in range(p):
                for j in range(p):
                    self._table[self.basis[0] ** i * self.basis[1] ** j] = (i, j)
        self._matrices: Dict[Permutation, np.ndarray] = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def project(self, element: Permutation) -> Permutation:
        """p-primary component of a module element"""
        return element ** self._idempotent

    def coordinates(self, element: Permutation) -> Tuple[int, ...]:
        try:
            return self._table[element]
        except KeyError:
            raise NotSubgroupError(f"{element} is not in the {self.p}-part of the module") from None

    def element(self, vector: Sequence[int]) -> Permutation:
        result = self.part.identity
        for b, c in zip(self.basis, vector):
            result = result * b ** (int(c) % self.modulus)
        return result

    def automorphism_matrix(self, f: Automorphism) -> np.ndarray:
        """Rows are the coordinates of the images of the basis"""
        return np.array([self.coordinates(f(b)) for b in self.basis], dtype=np.int64)

    def conjugation_matrix(self, element: Permutation) -> np.ndarray:
        matrix = self._matrices.get(element)
        if matrix is None:
            matrix = self.automorphism_matrix(lambda x: x.conjugate(element))
            self._matrices[element] = matrix
        return matrix


@dataclass
class ComplementCertificate:
    """Corrections nu with K = <phi(x) nu(x)> a complement"""

    nu: List[Permutation]
    complement: PermGroup


def _linearize(word: Word, images: Sequence[Permutation], coords: ModuleCoordinates,
               identity: Permutation) -> Tuple[Permutation, np.ndarray]:
    """
    Value w(g) and the linear part of nu -> w(g nu) / w(g)

    Moving every module factor to the right end of the product, a letter
    x contributes nu_x conjugated by the suffix after it and x^-1
    contributes -nu_x conjugated by x^-1 times that suffix.
    """
    d = coords.dim
    coeffs = np.zeros((len(images), d, d), dtype=np.int64)
    letters = [(gen, 1 if exp > 0 else -1) for gen, exp in word for _ in range(abs(exp))]
    inverses: Dict[int, Permutation] = {}
    suffix = identity
    for gen, sign in reversed(letters):
        if sign > 0:
            coeffs[gen] += coords.conjugation_matrix(suffix)
            suffix = images[gen] * suffix
        else:
            inv = inverses.setdefault(gen, images[gen].inverse())
            suffix = inv * suffix
            coeffs[gen] -= coords.conjugation_matrix(suffix)
    return suffix, coeffs % coords.modulus


def _append_equations(rows: List[List[int]], rhs: List[int], coeffs: np.ndarray, target: Sequence[int]) -> None:
    n, d, _ = coeffs.shape
    for k in range(d):
        rows.append([int(x) for x in coeffs[:, :, k].reshape(n * d)])
        rhs.append(int(target[k]))


def omega_complement_abelian(group: PermGroup, module: PermGroup, action: Optional[OmegaAction] = None,
                             config: Optional[EngineConfig] = None,
                             presentation: Optional[ConstructivePresentation] = None
                             ) -> Optional[ComplementCertificate]:
    """
    An Ω-invariant complement of an abelian normal subgroup, or None

    Solves for nu: X -> M such that every relation of a constructive
    presentation of G/M holds for the elements phi(x) nu(x), and such that
    every symbol maps each phi(x) nu(x) into the generated subgroup.
    """
    cfg = get_config(config)
    action = action or OmegaAction()
    if not module.is_subgroup_of(group):
        raise NotSubgroupError("module is not a subgroup")
    if not module.is_abelian():
        raise PreconditionError("module is not abelian")
    if not module.is_normal_in(group):
        raise NotNormalError("module is not normal")
    if not action.is_invariant(module):
        raise PreconditionError("module is not invariant under the action")
    identity = group.identity
    if module.order() == 1:
        return ComplementCertificate(list(group.generators), group)
    if module.order() == group.order():
        return ComplementCertificate([], PermGroup.trivial(group.degree))

    pres = presentation or constructive_presentation(group, module, cfg)
    images = pres.images
    n = len(images)
    nu = [identity] * n
    for p, _ in factor_integer(module.order()):
        coords = ModuleCoordinates(module, p)
        rows: List[List[int]] = []
        rhs: List[int] = []
        for rel in pres.relations:
            value, coeffs = _linearize(rel.relator(), images, coords, identity)
            target = coords.coordinates(coords.project(value))
            _append_equations(rows, rhs, coeffs, [-t for t in target])
        for f in action.maps:
            theta = coords.automorphism_matrix(f)
            for a, g in enumerate(images):
                moved = f(g)
                value, coeffs = _linearize(pres.psi(moved), images, coords, identity)
                coeffs[a] -= theta
                shift = coords.coordinates(coords.project(value.inverse() * moved))
                _append_equations(rows, rhs, coeffs % coords.modulus, shift)
        solution = _solve(rows, rhs, coords.modulus, n * coords.dim)
        if solution is None:
            logger.debug(f"no complement: equations inconsistent on the {p}-part")
            return None
        d = coords.dim
        for a in range(n):
            nu[a] = nu[a] * coords.element(solution[a * d:(a + 1) * d])
    gens = [g * v for g, v in zip(images, nu)]
    complement = PermGroup(gens, group.degree)
    if complement.order() * module.order() != group.order():
        raise StructureError("solved corrections do not give a complement")
    logger.debug(f"complement of order {complement.order()} to a module of order {module.order()}")
    return ComplementCertificate(nu, complement)


def _solve(rows: List[List[int]], rhs: List[int], modulus: int, unknowns: int) -> Optional[np.ndarray]:
    if not rows:
        return np.zeros(unknowns, dtype=np.int64)
    return solve_linear_system(rows, rhs, modulus)


def direct_complement(group: PermGroup, lower: PermGroup, upper: PermGroup,
                      action: Optional[OmegaAction] = None,
                      config: Optional[EngineConfig] = None) -> Optional[PermGroup]:
    """
    K with G/U = K/U × V/U, or None

    C/U is the centralizer of V/U in G/U; a direct factor exists exactly
    when CV = G and Z(V/U) has an Ω-complement in C/U.
    """
    cfg = get_config(config)
    action = action or OmegaAction()
    if not lower.is_subgroup_of(upper):
        raise PreconditionError("lower subgroup is not contained in the upper one")
    for sub in (lower, upper):
        if not sub.is_normal_in(group):
            raise NotNormalError("direct complement needs normal subgroups")
    factor = None
    if lower.order() > 1:
        factor = quotient(group, lower, config=cfg)
        ambient, top, act = factor.quotient, factor.project_subgroup(upper), action.induced(factor)
    else:
        ambient, top, act = group, upper, action
    cent = centralizer(ambient, top)
    if cent.closure(top.generators).order() != ambient.order():
        return None
    centre = intersection(ambient, cent, top)
    certificate = omega_complement_abelian(cent, centre, act, cfg)
    if certificate is None:
        return None
    if factor is None:
        return certificate.complement
    return factor.lift_subgroup(certificate.complement)


@dataclass
class SylowTower:
    """Abelian Sylow subgroups Y_1, ..., Y_l with every tail Y_k ... Y_l normal"""

    factors: List[Tuple[int, PermGroup]]
    shape: str

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    def sylow(self, p: int) -> PermGroup:
        return next(y for q, y in self.factors if q == p)

    def tail(self, k: int) -> PermGroup:
        """Y_k ... Y_l, 0-based"""
        sub = self.factors[k:]
        order = 1
        for _, y in sub:
            order *= y.order()
        degree = self.factors[0][1].degree
        return PermGroup([g for _, y in sub for g in y.generators], degree, order_hint=order)

    def hall_subgroup(self, p: int) -> PermGroup:
        """Product of the factors of the other primes"""
        others = [y for q, y in self.factors if q != p]
        degree = self.factors[0][1].degree
        order = 1
        for y in others:
            order *= y.order()
        return PermGroup([g for y in others for g in y.generators], degree, order_hint=order)

    def to_dict(self) -> Dict[str, object]:
        return {"shape": self.shape, "factors": [{"prime": p, "order": y.order()} for p, y in self.factors]}


def sylow_tower(group: PermGroup, config: Optional[EngineConfig] = None) -> SylowTower:
    """
    Abelian Sylow tower of a solvable group of cube-free order

    A normal Sylow subgroup is split off with its complement and the
    recursion continues in the complement. A normal Sylow 2-subgroup goes
    to the bottom; otherwise odd primes are tried from the largest down and
    2 ends on top.
    """
    cfg = get_config(config)
    if not is_solvable(group):
        raise NotSolvableError("Sylow towers need a solvable group")
    peeled: List[Tuple[int, PermGroup]] = []
    current = group
    while current.order() > 1:
        primes = [p for p, _ in factor_integer(current.order())]
        chosen = None
        if current is group and 2 in primes:
            y2 = sylow_subgroup(current, 2, cfg)
            if y2.is_normal_in(current):
                chosen = (2, y2)
        if chosen is None:
            for p in sorted(primes, key=lambda q: (q == 2, -q)):
                y = sylow_subgroup(current, p, cfg)
                if y.is_normal_in(current):
                    chosen = (p, y)
                    break
        if chosen is None:
            raise StructureError(f"no normal Sylow subgroup in a group of order {current.order()}")
        p, y = chosen
        if not y.is_abelian():
            raise StructureError(f"Sylow {p}-subgroup is not abelian")
        peeled.append((p, y))
        if y.order() == current.order():
            break
        certificate = omega_complement_abelian(current, y, config=cfg)
        if certificate is None:
            raise StructureError(f"normal Sylow {p}-subgroup has no complement")
        current = certificate.complement
    factors = list(reversed(peeled))
    primes = [p for p, _ in factors]
    if group.order() % 2:
        shape = "odd"
    elif primes[-1] == 2 and len(primes) > 1:
        shape = "even-bottom-2"
    elif primes[0] == 2:
        shape = "even-top-2"
    else:
        raise StructureError(f"Sylow 2-subgroup sits inside the tower {primes}")
    logger.debug(f"Sylow tower {primes} ({shape})")
    return SylowTower(factors, shape)


def socle(group: PermGroup, config: Optional[EngineConfig] = None) -> PermGroup:
    """
    Socle of a solvable group

    Walks a chief series N_0 < ... < N_r; S_i is a direct complement of
    N_(i-1) in N_i normal in G, or trivial when there is none.
    """
    cfg = get_config(config)
    series = chief_series(group)
    conjugation = OmegaAction.by_conjugation(group.generators)
    gens: List[Permutation] = []
    for lower, upper in zip(series.terms, series.terms[1:]):
        if lower.order() == 1:
            gens.extend(upper.generators)
            continue
        complement = direct_complement(upper, PermGroup.trivial(group.degree), lower, conjugation, cfg)
        if complement is not None:
            gens.extend(complement.generators)
    return PermGroup(gens, group.degree)


def frattini(group: PermGroup, config: Optional[EngineConfig] = None) -> PermGroup:
    """
    Frattini subgroup of a solvable group of cube-free order

    Only primes with a cyclic Sylow subgroup P of order p^2 contribute,
    each with the subgroup of order p of P when that subgroup is normal.
    """
    cfg = get_config(config)
    if not is_solvable(group):
        raise NotSolvableError("Frattini subgroups are computed for solvable groups")
    gens = []
    for p, e in factor_integer(group.order()):
        if e != 2:
            continue
        sylow = sylow_subgroup(group, p, cfg)
        generator = next((g for g in sylow.generators if g.order() == p * p), None)
        if generator is None:
            continue
        bottom = PermGroup([generator ** p], group.degree, order_hint=p)
        if bottom.is_normal_in(group):
            gens.append(generator ** p)
    result = PermGroup(gens, group.degree)
    logger.debug(f"Frattini subgroup of order {result.order()}")
    return result


@dataclass
class SocleFactor:
    """Sylow subgroup of the socle with a fixed basis"""

    p: int
    group: PermGroup
    coords: ModuleCoordinates

    @property
    def dim(self) -> int:
        return self.coords.dim


@dataclass
class FrattiniFreeDecomposition:
    """
    L = K ⋉ (B × C) for a Frattini-free solvable group of cube-free order

    B collects the socle factors of prime order, C those of order p^2,
    each with a basis. The conjugation representation of K is read off
    in these bases, B primes first, then C primes, both ascending.
    """

    group: PermGroup
    socle: PermGroup
    complement: PermGroup
    factors: List[SocleFactor]

    @property
    def b_primes(self) -> List[int]:
        return [f.p for f in self.factors if f.dim == 1]

    @property
    def c_primes(self) -> List[int]:
        return [f.p for f in self.factors if f.dim == 2]

    @property
    def signature(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((f.p, f.dim) for f in self.factors)

    def matrix_of(self, element: Permutation) -> GLProductElement:
        """Conjugation action of an element on the socle"""
        return GLProductElement(tuple(FpMatrix(f.p, tuple(tuple(int(x) for x in row)
                                                          for row in f.coords.conjugation_matrix(element)))
                                      for f in self.factors))

    def representation(self) -> List[GLProductElement]:
        return [self.matrix_of(k) for k in self.complement.generators]

    def coordinates(self, element: Permutation) -> List[Tuple[int, ...]]:
        return [f.coords.coordinates(f.coords.project(element)) for f in self.factors]

    def socle_element(self, vectors: Sequence[Sequence[int]]) -> Permutation:
        result = self.group.identity
        for f, v in zip(self.factors, vectors):
            result = result * f.coords.element(v)
        return result

    def to_dict(self) -> Dict[str, object]:
        return {
            "order": self.group.order(),
            "b_primes": self.b_primes,
            "c_primes": self.c_primes,
            "complement_order": self.complement.order(),
            "complement_images": [m.to_list() for m in self.representation()],
        }


def frattini_free_decomposition(group: PermGroup, config: Optional[EngineConfig] = None,
                                check: bool = True) -> FrattiniFreeDecomposition:
    """Socle, complement and conjugation representation of a Frattini-free group"""
    cfg = get_config(config)
    if check and frattini(group, cfg).order() != 1:
        raise PreconditionError("group has a nontrivial Frattini subgroup")
    soc = socle(group, cfg)
    if not soc.is_abelian():
        raise StructureError("socle of a Frattini-free solvable group must be abelian")
    certificate = omega_complement_abelian(group, soc, config=cfg)
    if certificate is None:
        raise StructureError("socle has no complement")
    factors = []
    for p, _ in factor_integer(soc.order()):
        coords = ModuleCoordinates(soc, p)
        factors.append(SocleFactor(p, coords.part, coords))
    factors.sort(key=lambda f: (f.dim, f.p))
    if centralizer(group, soc).order() != soc.order():
        raise StructureError("complement does not act faithfully on the socle")
    decomposition = FrattiniFreeDecomposition(group, soc, certificate.complement, factors)
    logger.debug(f"Frattini-free decomposition: B={decomposition.b_primes} C={decomposition.c_primes} "
                 f"|K|={certificate.complement.order()}")
    return decomposition
