"""
Homomorphisms between permutation groups, coset actions and quotients

A homomorphism G -> H is stored by generator images. Evaluation, kernels
and preimages go through the graph group ``<(g, g phi)>`` acting on the
disjoint union of both domains: the map is well defined exactly when the
graph group has order |G|.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from cubefree.core.config import EngineConfig, get_config
from cubefree.core.errors import (DegreeMismatchError, IndexBoundError, NotNormalError,
                                  NotSubgroupError, StructureError, VerificationError)
from cubefree.core.perm import Permutation, PermGroup


def graph_group(sources: Sequence[Permutation], images: Sequence[Permutation],
                base_prefix: Sequence[int] = ()) -> PermGroup:
    """Group generated by the pairs (s, t) acting on deg(s) + deg(t) points"""
    if not sources:
        raise ValueError("graph group needs at least one generator pair")
    degree = sources[0].degree + images[0].degree
    return PermGroup([s.direct_sum(t) for s, t in zip(sources, images)], degree, base_prefix=base_prefix)


def graph_order(sources: Sequence[Permutation], images: Sequence[Permutation]) -> int:
    """Order of the graph group; equals |<sources>| iff s -> t extends to a homomorphism"""
    base = PermGroup(sources, sources[0].degree).base
    return graph_group(sources, images, base).order()


def _strip_pair(graph: PermGroup, levels: int, left: Permutation, right_degree: int) -> Optional[Permutation]:
    """
    Sift (left, 1) through the first `levels` levels of a graph chain

    Returns the element t with (left, t) in the graph group, or None when
    left is not in the projection of the graph group.
    """
    chain = graph.chain
    pair = left.extend(left.degree + right_degree)
    residue, depth, _ = chain.sift(pair, 0, levels)
    if depth != levels:
        return None
    images = residue.images
    n = left.degree
    if any(images[i] != i for i in range(n)):
        return None
    return Permutation(images[n + j] - n for j in range(right_degree)).inverse()


class GroupHom:
    """Homomorphism given by the images of the domain generators"""

    def __init__(self, domain: PermGroup, codomain: PermGroup, gen_images: Sequence[Permutation],
                 *, name: Optional[str] = None):
        gen_images = tuple(gen_images)
        if len(gen_images) != len(domain.generators):
            raise ValueError(f"{len(domain.generators)} generators but {len(gen_images)} images")
        for image in gen_images:
            if image.degree != codomain.degree:
                raise DegreeMismatchError("image degree differs from codomain degree")
        self.domain = domain
        self.codomain = codomain
        self.gen_images = gen_images
        self.name = name
        self._graph: Optional[PermGroup] = None
        self._cograph: Optional[PermGroup] = None
        self._image: Optional[PermGroup] = None

    @classmethod
    def from_images(cls, domain: PermGroup, codomain: PermGroup,
                    sources: Sequence[Permutation], images: Sequence[Permutation],
                    *, check: bool = True, name: Optional[str] = None) -> "GroupHom":
        """
        Homomorphism given on an arbitrary generating set of the domain

        Raises VerificationError when the assignment does not extend to a
        homomorphism (checked when `check` is set) and NotSubgroupError when
        the sources do not generate the domain.
        """
        if not domain.generators:
            return cls(domain, codomain, (), name=name)
        graph = graph_group(sources, images, domain.base)
        if check and graph.order() != domain.order():
            raise VerificationError("generator assignment does not extend to a homomorphism")
        levels = len(domain.base)
        gen_images = []
        for gen in domain.generators:
            image = _strip_pair(graph, levels, gen, codomain.degree)
            if image is None:
                raise NotSubgroupError("sources do not generate the domain")
            gen_images.append(image)
        hom = cls(domain, codomain, gen_images, name=name)
        hom._graph = graph
        return hom

    @property
    def graph(self) -> PermGroup:
        if self._graph is None:
            self._graph = graph_group(self.domain.generators, self.gen_images, self.domain.base)
        return self._graph

    def is_well_defined(self) -> bool:
        if not self.domain.generators:
            return True
        return self.graph.order() == self.domain.order()

    def __call__(self, element: Permutation) -> Permutation:
        if not self.domain.generators:
            if not element.is_identity():
                raise NotSubgroupError(f"{element} is not in the trivial domain")
            return self.codomain.identity
        image = _strip_pair(self.graph, len(self.domain.base), element, self.codomain.degree)
        if image is None:
            raise NotSubgroupError(f"{element} is not in the domain")
        return image

    def image(self) -> PermGroup:
        if self._image is None:
            self._image = PermGroup(self.gen_images, self.codomain.degree)
        return self._image

    @property
    def cograph(self) -> PermGroup:
        if self._cograph is None:
            self._cograph = graph_group(self.gen_images, self.domain.generators, self.image().base)
        return self._cograph

    def kernel(self) -> PermGroup:
        if not self.domain.generators:
            return PermGroup.trivial(self.domain.degree)
        image = self.image()
        m, n = self.codomain.degree, self.domain.degree
        gens = [g.restrict(m, m + n) for g in self.cograph.chain.level_generators(len(image.base))]
        return PermGroup(gens, n, order_hint=self.cograph.order() // image.order())

    def preimage_of(self, element: Permutation) -> Optional[Permutation]:
        """Some x with x phi = element, or None when element is not in the image"""
        if not self.domain.generators:
            return self.domain.identity if element.is_identity() else None
        return _strip_pair(self.cograph, len(self.image().base), element, self.domain.degree)

    def preimage(self, subgroup: PermGroup) -> PermGroup:
        """Full preimage of a subgroup of the image"""
        gens = []
        for h in subgroup.generators:
            x = self.preimage_of(h)
            if x is None:
                raise NotSubgroupError("subgroup is not contained in the image")
            gens.append(x)
        kernel = self.kernel()
        return PermGroup(gens + list(kernel.generators), self.domain.degree,
                         order_hint=subgroup.order() * kernel.order())

    def is_injective(self) -> bool:
        return self.image().order() == self.domain.order()

    def is_isomorphism(self) -> bool:
        return (self.is_well_defined() and self.domain.order() == self.codomain.order()
                and self.image().order() == self.codomain.order())

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self followed by other"""
        return GroupHom(self.domain, other.codomain, [other(x) for x in self.gen_images])

    def inverse(self) -> "GroupHom":
        gens = []
        for y in self.codomain.generators:
            x = self.preimage_of(y)
            if x is None:
                raise VerificationError("map is not surjective")
            gens.append(x)
        return GroupHom(self.codomain, self.domain, gens)

    def restrict(self, subgroup: PermGroup) -> "GroupHom":
        return GroupHom(subgroup, self.codomain, [self(g) for g in subgroup.generators])

    def mapping(self) -> Dict[str, str]:
        return {g.to_cycle_string(): h.to_cycle_string() for g, h in zip(self.domain.generators, self.gen_images)}

    def __repr__(self) -> str:
        return f"<GroupHom {self.domain!r} -> {self.codomain!r}>"


class CosetCanonizer:
    """
    Canonical representatives of right cosets Hg

    A coset is labelled by the lexicographically least image of `base`
    among its elements, found greedily level by level along H's chain
    rebuilt on `base`. `base` must be a base of a group containing H.
    """

    def __init__(self, subgroup: PermGroup, base: Sequence[int]):
        self.base = list(base)
        self.subgroup = subgroup.with_base(self.base)

    def canonical(self, element: Permutation) -> Tuple[Permutation, Tuple[int, ...]]:
        x = element
        for level in self.subgroup.chain.levels:
            best = min(level.orbit, key=x)
            if best != level.base_point:
                x = level.transversal[best] * x
        return x, tuple(x(b) for b in self.base)


class CosetSpace(CosetCanonizer):
    """Right cosets Hg of a subgroup H of G, enumerated from the trivial coset"""

    def __init__(self, group: PermGroup, subgroup: PermGroup, cap: Optional[int] = None):
        super().__init__(subgroup, group.base)
        self.group = group
        index = group.order() // self.subgroup.order()
        if cap is not None and index > cap:
            raise IndexBoundError(f"index {index} exceeds the cap {cap}")
        self.index = index
        self.reps: List[Permutation] = []
        self.positions: Dict[Tuple[int, ...], int] = {}
        first, key = self.canonical(group.identity)
        self.reps.append(first)
        self.positions[key] = 0
        self._actions: List[List[int]] = [[] for _ in group.generators]
        i = 0
        while i < len(self.reps):
            rep = self.reps[i]
            for k, s in enumerate(group.generators):
                image_rep, image_key = self.canonical(rep * s)
                j = self.positions.get(image_key)
                if j is None:
                    j = len(self.reps)
                    self.positions[image_key] = j
                    self.reps.append(image_rep)
                self._actions[k].append(j)
            i += 1
        if len(self.reps) != index:
            raise StructureError(f"found {len(self.reps)} cosets, expected {index}")

    def position(self, element: Permutation) -> int:
        return self.positions[self.canonical(element)[1]]

    def action_images(self) -> List[Permutation]:
        """Permutation of the cosets induced by each generator of G"""
        return [Permutation(images) for images in self._actions]

    def act(self, position: int, element: Permutation) -> int:
        return self.position(self.reps[position] * element)


def coset_action(group: PermGroup, subgroup: PermGroup, config: Optional[EngineConfig] = None) -> GroupHom:
    """Action of G on the right cosets of a subgroup"""
    cfg = get_config(config)
    space = CosetSpace(group, subgroup, cfg.index_cap)
    images = space.action_images()
    return GroupHom(group, PermGroup(images, space.index), images)


@dataclass
class CosetQuotient:
    """G/N realised as a permutation group on coset spaces"""

    parent: PermGroup
    kernel: PermGroup
    quotient: PermGroup
    projection: GroupHom
    spaces: List[CosetSpace]
    regular: bool

    def section(self, element: Permutation) -> Permutation:
        """A parent element mapping to the given quotient element"""
        if self.regular:
            return self.spaces[0].reps[element(0)]
        x = self.projection.preimage_of(element)
        if x is None:
            raise NotSubgroupError(f"{element} is not in the quotient")
        return x

    def project(self, element: Permutation) -> Permutation:
        return self.projection(element)

    def lift_subgroup(self, subgroup: PermGroup) -> PermGroup:
        """Full preimage of a subgroup of the quotient"""
        gens = [self.section(q) for q in subgroup.generators] + list(self.kernel.generators)
        return PermGroup(gens, self.parent.degree, order_hint=subgroup.order() * self.kernel.order())

    def project_subgroup(self, subgroup: PermGroup) -> PermGroup:
        return PermGroup([self.projection(g) for g in subgroup.generators], self.quotient.degree)

    @property
    def index(self) -> int:
        return self.quotient.order()


def _union_action(group: PermGroup, spaces: List[CosetSpace], index: int) -> PermGroup:
    images = [Permutation.identity(0)] * len(group.generators)
    for space in spaces:
        images = [a.direct_sum(b) for a, b in zip(images, space.action_images())]
    degree = sum(space.index for space in spaces)
    return PermGroup(images, degree, order_hint=index)


def quotient(group: PermGroup, normal: PermGroup, subgroups: Optional[Sequence[PermGroup]] = None,
             config: Optional[EngineConfig] = None, check_normal: bool = True) -> CosetQuotient:
    """
    G/N as a permutation group

    Small indices use the regular action on the cosets of N. Larger ones act
    on the disjoint union of the coset spaces of `subgroups` (supplied
    subgroups containing N whose intersection is N), or of N P_q for Sylow
    subgroups P_q, whichever is smaller. Faithfulness is checked by order;
    an unfaithful union falls back to the regular action when the index is
    within `index_cap`.
    """
    cfg = get_config(config)
    if check_normal and not normal.is_normal_in(group):
        raise NotNormalError("subgroup is not normal")
    index = group.order() // normal.order()
    if not group.generators:
        trivial = PermGroup.trivial(1)
        return CosetQuotient(group, normal, trivial, GroupHom(group, trivial, []), [], True)

    candidates: Optional[List[PermGroup]] = None
    if index > cfg.regular_quotient_limit:
        if subgroups is not None:
            candidates = [normal.closure(h.generators) for h in subgroups]
        else:
            from cubefree.core.grouptheory import factor_integer, sylow_subgroup
            candidates = [normal.closure(sylow_subgroup(group, q, config=cfg).generators)
                          for q, _ in factor_integer(index)]
        degree = sum(group.order() // h.order() for h in candidates)
        if degree >= index and index <= cfg.index_cap:
            candidates = None

    if candidates is None:
        space = CosetSpace(group, normal, cfg.index_cap)
        image_group = _union_action(group, [space], index)
        spaces, regular = [space], True
    else:
        spaces = [CosetSpace(group, h, cfg.index_cap) for h in candidates]
        image_group = _union_action(group, spaces, index)
        regular = False
        if image_group.order() != index and index <= cfg.index_cap:
            # the candidates meet in more than N, as for a Sylow subgroup that is all of G
            logger.debug(f"union action has order {image_group.order()}, using the regular action")
            space = CosetSpace(group, normal, cfg.index_cap)
            image_group = _union_action(group, [space], index)
            spaces, regular = [space], True
    if image_group.order() != index:
        raise StructureError(f"coset action has order {image_group.order()}, expected {index}")
    logger.debug(f"quotient of index {index} on {image_group.degree} points ({'regular' if regular else 'union'})")
    projection = GroupHom(group, image_group, image_group.generators)
    return CosetQuotient(group, normal, image_group, projection, spaces, regular)
