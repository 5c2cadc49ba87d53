"""
Constructive presentations of quotients G/N

A constructive presentation carries generators X, relations, an evaluation
map phi: X -> G and a rewriting map psi: G -> words over X with
g^-1 * phi(psi(g)) in N for every g. Polycyclic presentations are built by
extending presentations down a normal series; psi only ever sifts through
permutation groups and never collects words.
"""

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from loguru import logger

from cubefree.core.config import EngineConfig, get_config
from cubefree.core.errors import (NotNormalError, NotSolvableError, PreconditionError,
                                  VerificationError)
from cubefree.core.homs import GroupHom, quotient
from cubefree.core.grouptheory import chief_series, element_order_modulo, factor_integer, normal_closure
from cubefree.core.perm import Permutation, PermGroup
from cubefree.core.slp import (EMPTY_WORD, Word, evaluate_word, format_word, reduce_word, relabel_word,
                               word_concat, word_inverse, word_to_json)


@dataclass(frozen=True)
class Relation:
    """Relation lhs = rhs between words"""

    lhs: Word
    rhs: Word = EMPTY_WORD

    def relator(self) -> Word:
        return word_concat(self.lhs, word_inverse(self.rhs))

    def shifted(self, offset: int) -> "Relation":
        mapping = _ShiftMap(offset)
        return Relation(relabel_word(self.lhs, mapping), relabel_word(self.rhs, mapping))

    def holds(self, images: Sequence[Any], identity: Any) -> bool:
        return evaluate_word(self.lhs, images, identity) == evaluate_word(self.rhs, images, identity)


class _ShiftMap:
    """Index map i -> i + offset usable with relabel_word"""

    def __init__(self, offset: int):
        self.offset = offset

    def __getitem__(self, i: int) -> int:
        return i + self.offset


def shift_word(word: Word, offset: int) -> Word:
    return relabel_word(word, _ShiftMap(offset))


@dataclass
class Presentation:
    """Abstract presentation: generator names and relations"""

    names: List[str]
    relations: List[Relation]

    def holds_in(self, images: Sequence[Any], identity: Any) -> bool:
        return all(rel.holds(images, identity) for rel in self.relations)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generators": len(self.names),
            "names": list(self.names),
            "relations": [{"lhs": word_to_json(r.lhs), "rhs": word_to_json(r.rhs)} for r in self.relations],
        }

    def __str__(self) -> str:
        rels = ", ".join(f"{format_word(r.lhs, self.names)} = {format_word(r.rhs, self.names)}"
                         for r in self.relations)
        return f"< {', '.join(self.names)} | {rels} >"


@dataclass
class ConstructivePresentation:
    """Constructive presentation of group/modulus"""

    group: PermGroup
    modulus: PermGroup
    images: Tuple[Permutation, ...]
    relations: List[Relation]
    rewrite: Callable[[Permutation], Word]
    names: List[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.names:
            self.names = [f"x{i + 1}" for i in range(len(self.images))]

    @property
    def generator_count(self) -> int:
        return len(self.images)

    def phi(self, word: Word) -> Permutation:
        return evaluate_word(word, self.images, self.group.identity)

    def psi(self, element: Permutation) -> Word:
        return self.rewrite(element)

    def presentation(self) -> Presentation:
        return Presentation(list(self.names), list(self.relations))

    def relations_hold(self) -> bool:
        return all(self.modulus.contains(self.phi(r.lhs) * self.phi(r.rhs).inverse()) for r in self.relations)

    def rewriting_holds(self, samples: int = 200, seed: int = 0) -> bool:
        rng = random.Random(seed)
        for _ in range(samples):
            g = self.group.random_element(rng)
            if not self.modulus.contains(g.inverse() * self.phi(self.psi(g))):
                return False
        return True

    def verify(self, samples: int = 200, seed: int = 0) -> None:
        if not self.relations_hold():
            raise VerificationError("a relation does not evaluate into the modulus")
        if not self.rewriting_holds(samples, seed):
            raise VerificationError("rewriting map fails g^-1 phi(psi(g)) in N")

    def to_dict(self) -> Dict[str, Any]:
        data = self.presentation().to_dict()
        data["images"] = [g.to_cycle_string() for g in self.images]
        data["order"] = self.group.order() // self.modulus.order()
        return data


def verify_presentation(presentation: ConstructivePresentation, samples: int = 200, seed: int = 0) -> bool:
    """True when the relations evaluate into N and psi rewrites `samples` random elements correctly"""
    return presentation.relations_hold() and presentation.rewriting_holds(samples, seed)


@dataclass
class PcPresentation(ConstructivePresentation):
    """Constructive presentation in collected polycyclic form"""

    relative_orders: List[int] = field(default_factory=list)

    def is_collected(self) -> bool:
        """Every tail mentions only generators after the leading one"""
        n = len(self.images)
        seen_power = set()
        seen_conjugate = set()
        for rel in self.relations:
            if len(rel.lhs) == 1:
                a, e = rel.lhs[0]
                if e != self.relative_orders[a]:
                    return False
                seen_power.add(a)
            elif len(rel.lhs) == 3 and rel.lhs[0][0] == rel.lhs[2][0] and rel.lhs[0][1] == -1 \
                    and rel.lhs[2][1] == 1 and rel.lhs[1][1] == 1:
                a, b = rel.lhs[0][0], rel.lhs[1][0]
                if not a < b:
                    return False
                seen_conjugate.add((a, b))
            else:
                return False
            if any(gen <= a for gen, _ in rel.rhs):
                return False
        expected = {(a, b) for a in range(n) for b in range(a + 1, n)}
        return seen_power == set(range(n)) and seen_conjugate == expected

    def exponents(self, element: Permutation) -> List[int]:
        """Exponent vector of psi(element)"""
        vector = [0] * len(self.images)
        for gen, exp in self.psi(element):
            vector[gen] += exp
        return vector

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["relative_orders"] = list(self.relative_orders)
        return data


def _composition_steps(upper: PermGroup, lower: PermGroup) -> List[Tuple[Permutation, int, PermGroup]]:
    """
    Prime-index steps from lower up to upper for an abelian section

    Returns (y, p, H) top generator first, where H is the subgroup below y's
    step: y has order p modulo H, and <H, y> is the subgroup above.
    """
    ascending: List[Tuple[Permutation, int, PermGroup]] = []
    current = lower
    for g in upper.generators:
        k = element_order_modulo(g, current)
        if k == 1:
            continue
        primes = [p for p, e in factor_integer(k) for _ in range(e)]
        done = 1
        for p in primes:
            done *= p
            y = g ** (k // done)
            below = current
            current = current.closure([y], order_hint=current.order() * p)
            ascending.append((y, p, below))
    return list(reversed(ascending))


def abelian_section_presentation(upper: PermGroup, lower: PermGroup) -> PcPresentation:
    """Collected presentation of an abelian section upper/lower"""
    steps = _composition_steps(upper, lower)
    images = tuple(y for y, _, _ in steps)
    orders = [p for _, p, _ in steps]
    identity = upper.identity

    def sift_exponents(element: Permutation, start: int = 0) -> Word:
        letters = []
        for a in range(start, len(steps)):
            y, p, below = steps[a]
            inv = y.inverse()
            for e in range(p):
                if below.contains(element):
                    break
                element = element * inv
            else:
                raise VerificationError("element does not lie in the section")
            if e:
                letters.append((a, e))
        return tuple(letters)

    relations = []
    for a, (y, p, _) in enumerate(steps):
        relations.append(Relation(((a, p),), sift_exponents(y ** p, a + 1)))
    for a in range(len(steps)):
        for b in range(a + 1, len(steps)):
            relations.append(Relation(((a, -1), (b, 1), (a, 1)), ((b, 1),)))
    return PcPresentation(upper, lower, images, relations, sift_exponents, relative_orders=orders)


def extend_presentation(outer: ConstructivePresentation, inner: ConstructivePresentation) -> ConstructivePresentation:
    """
    Presentation of G/L' from one of G/L and one of L/L'

    Generators are the outer ones followed by the inner ones. Each outer
    relation lhs = rhs gains a tail in the inner generators, the inner
    relations are kept, and conjugation relations y^x = psi_in(y^x) are added.
    """
    if inner.group.order() != outer.modulus.order() or not inner.group.is_subgroup_of(outer.modulus):
        raise PreconditionError("inner presentation is not of the outer modulus")
    if not inner.modulus.is_normal_in(outer.group):
        raise NotNormalError("new modulus is not normal in the outer group")
    k = outer.generator_count
    relations: List[Relation] = []
    for rel in outer.relations:
        z = outer.phi(rel.rhs).inverse() * outer.phi(rel.lhs)
        tail = shift_word(inner.psi(z), k)
        relations.append(Relation(rel.lhs, word_concat(rel.rhs, tail)))
    relations.extend(rel.shifted(k) for rel in inner.relations)
    for a, x in enumerate(outer.images):
        for b, y in enumerate(inner.images):
            relations.append(Relation(((a, -1), (k + b, 1), (a, 1)), shift_word(inner.psi(y.conjugate(x)), k)))

    def rewrite(element: Permutation) -> Word:
        head = outer.psi(element)
        rest = outer.phi(head).inverse() * element
        return head + shift_word(inner.psi(rest), k)

    names = [f"x{i + 1}" for i in range(k + inner.generator_count)]
    images = tuple(outer.images) + tuple(inner.images)
    if isinstance(outer, PcPresentation) and isinstance(inner, PcPresentation):
        return PcPresentation(outer.group, inner.modulus, images, relations, rewrite, names,
                              relative_orders=list(outer.relative_orders) + list(inner.relative_orders))
    return ConstructivePresentation(outer.group, inner.modulus, images, relations, rewrite, names)


def _trivial_presentation(group: PermGroup, modulus: PermGroup) -> PcPresentation:
    return PcPresentation(group, modulus, (), [], lambda g: EMPTY_WORD, relative_orders=[])


def derived_series_modulo(group: PermGroup, normal: PermGroup) -> List[PermGroup]:
    """G = D_1 > D_2 > ... with D_{k+1} = [D_k, D_k] N, until stable"""
    series = [group]
    while series[-1].order() > normal.order():
        term = series[-1]
        gens = term.generators
        commutators = [a.commutator(b) for i, a in enumerate(gens) for b in gens[i + 1:]]
        nxt = normal_closure(group, commutators + list(normal.generators))
        if nxt.order() == term.order():
            break
        series.append(nxt)
    return series


def pc_presentation(group: PermGroup, modulus: Optional[PermGroup] = None,
                    config: Optional[EngineConfig] = None) -> PcPresentation:
    """
    Polycyclic constructive presentation of group/modulus

    Without a modulus the series is a chief series (outer recursion) and
    each elementary abelian factor is refined to prime steps (inner
    recursion). With a modulus N the derived series modulo N is used.
    """
    cfg = get_config(config)
    if modulus is None:
        modulus = PermGroup.trivial(group.degree)
        terms = chief_series(group).descending()
    else:
        terms = derived_series_modulo(group, modulus)
        if terms[-1].order() != modulus.order():
            raise NotSolvableError("quotient is not solvable")
    result = _trivial_presentation(group, terms[0])
    for upper, lower in zip(terms, terms[1:]):
        result = extend_presentation(result, abelian_section_presentation(upper, lower))
    result.modulus = modulus
    if group.order() <= cfg.verify_order_bound:
        result.verify(samples=20, seed=cfg.random_seed)
    logger.trace(f"pc presentation with relative orders {result.relative_orders}")
    return result


def chain_presentation(group: PermGroup) -> ConstructivePresentation:
    """
    Presentation on the strong generators read off the stabilizer chain

    For every level, orbit point b and level generator s there is one
    relation u_b s = w u_(b s), where w is the sifted word of the Schreier
    generator.
    """
    chain = group.chain
    shift = chain.input_count
    relations = []
    for i, level in enumerate(chain.levels):
        for beta in level.orbit:
            for idx in level.gens:
                s = chain.strong[idx]
                image = s(beta)
                schreier = level.transversal[beta] * s * level.inverse_rep(image)
                word = group.sift_word(schreier)
                lhs = shift_word(chain._path(i, beta), -shift) + ((idx, 1),)
                rhs = word + shift_word(chain._path(i, image), -shift)
                relations.append(Relation(reduce_word(lhs), reduce_word(rhs)))
    images = tuple(chain.strong)

    def rewrite(element: Permutation) -> Word:
        word = group.sift_word(element)
        if word is None:
            raise VerificationError(f"{element} is not in the group")
        return word

    return ConstructivePresentation(group, PermGroup.trivial(group.degree), images, relations, rewrite)


def constructive_presentation(group: PermGroup, normal: Optional[PermGroup] = None,
                              config: Optional[EngineConfig] = None) -> ConstructivePresentation:
    """Constructive presentation of G/N: polycyclic when G/N is solvable, chain-based otherwise"""
    cfg = get_config(config)
    if normal is None:
        normal = PermGroup.trivial(group.degree)
    if not normal.is_normal_in(group):
        raise NotNormalError("modulus is not normal")
    if normal.order() == group.order():
        return _trivial_presentation(group, normal)
    terms = derived_series_modulo(group, normal)
    if terms[-1].order() == normal.order():
        if normal.order() == 1:
            return pc_presentation(group, config=cfg)
        return pc_presentation(group, normal, config=cfg)
    if normal.order() == 1:
        presentation = chain_presentation(group)
    else:
        factor = quotient(group, normal, config=cfg)
        inner = chain_presentation(factor.quotient)
        images = tuple(factor.section(q) for q in inner.images)
        presentation = ConstructivePresentation(
            group, normal, images, inner.relations,
            lambda g: inner.psi(factor.project(g)), inner.names)
    if group.order() <= cfg.verify_order_bound:
        presentation.verify(samples=20, seed=cfg.random_seed)
    return presentation


def semidirect_presentation(automorphisms: Sequence[GroupHom], inner: ConstructivePresentation,
                            outer_relations: Sequence[Relation],
                            outer_names: Optional[Sequence[str]] = None) -> Presentation:
    """
    Presentation of A ⋉ G on Ω ⊔ X

    `automorphisms[w]` is the action of the symbol w on G, `outer_relations`
    are relations of A over Ω. The result holds the outer relations, the
    inner relations shifted past Ω, and x^w = psi(phi(x)^w) for all w, x.
    """
    if inner.modulus.order() != 1:
        raise PreconditionError("inner presentation must present G itself")
    for theta in automorphisms:
        if theta.domain.order() != inner.group.order() or not theta.is_isomorphism():
            raise PreconditionError("action image is not an automorphism")
    k = len(automorphisms)
    names = list(outer_names) if outer_names else [f"w{i + 1}" for i in range(k)]
    names += [f"x{i + 1}" for i in range(inner.generator_count)]
    relations = list(outer_relations)
    relations.extend(rel.shifted(k) for rel in inner.relations)
    for w, theta in enumerate(automorphisms):
        for a, x in enumerate(inner.images):
            relations.append(Relation(((w, -1), (k + a, 1), (w, 1)), shift_word(inner.psi(theta(x)), k)))
    return Presentation(names, relations)

