"""
Subgroups of GL_2(p) and conjugacy in products of GL_1 and GL_2 factors

Each factor subgroup is brought to a standard form for its kind (diagonal,
inside the fixed Singer cycle, monomial, or normalizing the Singer cycle)
and then to the least such form; two products are matched factor by factor
and the remaining freedom is searched inside the product of the
normalizers.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, TypeVar

from loguru import logger
from sympy import factorint, n_order, primitive_root

from cubefree.core.errors import PreconditionError, StructureError
from cubefree.core.modp import FpMatrix, GLProductElement, companion_matrix, discrete_log, singer_cycle

T = TypeVar("T")

REDUCIBLE = "reducible-diagonal"
SINGER = "irreducible-abelian-singer"
MONOMIAL = "irreducible-nonabelian-monomial"
SINGER_NORMALIZER = "irreducible-nonabelian-singer-normalizer"
SINGER_TWISTED = "irreducible-nonabelian-singer-twisted"


def group_closure(generators: Iterable[T], identity: T) -> List[T]:
    """All elements of the group generated by matrices (or matrix tuples), identity first"""
    gens = list(generators)
    elements = [identity]
    seen = {identity}
    for x in elements:
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                elements.append(y)
    return elements


def generating_subset(elements: Sequence[T], identity: T) -> List[T]:
    """Greedy generating set, scanning elements in the given order"""
    gens: List[T] = []
    span = {identity}
    target = len(elements)
    for x in elements:
        if len(span) == target:
            break
        if x not in span:
            gens.append(x)
            span = set(group_closure(gens, identity))
    return gens


def projective_points(p: int) -> List[Tuple[int, int]]:
    return [(1, x) for x in range(p)] + [(0, 1)]


def _is_proportional(u: Sequence[int], v: Sequence[int], p: int) -> bool:
    return (u[0] * v[1] - u[1] * v[0]) % p == 0


def invariant_lines(generators: Sequence[FpMatrix], p: int) -> List[Tuple[int, int]]:
    return [v for v in projective_points(p) if all(_is_proportional(g.act(v), v, p) for g in generators)]


def _preserved_pairs(generators: Sequence[FpMatrix], p: int) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Unordered pairs of lines that every generator maps into the pair"""
    points = projective_points(p)
    pairs = []
    for i, u in enumerate(points):
        for v in points[i + 1:]:
            if all(any(_is_proportional(g.act(u), w, p) for w in (u, v))
                   and any(_is_proportional(g.act(v), w, p) for w in (u, v)) for g in generators):
                pairs.append((u, v))
    return pairs


@dataclass(frozen=True)
class GL2ClassLabel:
    """
    Conjugacy label of a p'-subgroup of GL_2(p)

    conjugator^-1 K conjugator is the canonical conjugate; normalizer_gens
    generate the normalizer of the canonical conjugate in GL_2(p).
    """

    kind: str
    p: int
    dim: int
    order: int
    parameter: Optional[int]
    conjugator: FpMatrix
    canonical: Tuple[FpMatrix, ...]
    normalizer_gens: Tuple[FpMatrix, ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": self.kind,
            "p": self.p,
            "order": self.order,
            "parameter": self.parameter,
            "conjugator": self.conjugator.to_list(),
        }


def _key(elements: Iterable[FpMatrix]) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    return tuple(sorted(m.entries for m in elements))


def _from_rows(u: Sequence[int], v: Sequence[int], p: int) -> FpMatrix:
    return FpMatrix(p, (tuple(u), tuple(v)))


def monomial_group(p: int) -> List[FpMatrix]:
    """Diagonal and antidiagonal matrices of GL_2(p), identity first"""
    units = range(1, p)
    return ([FpMatrix.diagonal(p, a, b) for a in units for b in units]
            + [FpMatrix(p, ((0, a), (b, 0))) for a in units for b in units])


def gl2_generators(p: int) -> Tuple[FpMatrix, ...]:
    """diag(g, 1), a transvection and the swap; the Borel subgroup and the swap generate GL_2(p)"""
    g = primitive_root(p)
    return (FpMatrix.diagonal(p, g, 1), FpMatrix(p, ((1, 1), (0, 1))), FpMatrix(p, ((0, 1), (1, 0))))


def _singer_generator(p: int) -> FpMatrix:
    if p == 2:
        return companion_matrix(2, 1, 1)
    return singer_cycle(p).s


def _cyclic_conjugator(k: FpMatrix, target: FpMatrix) -> FpMatrix:
    """
    x with x^-1 k x = target, for irreducible k and target with one characteristic polynomial

    Both are the companion matrix in a basis (v, v k), so x maps one such
    basis to the other.
    """
    v = (1, 0)
    return _from_rows(v, k.act(v), k.p).inverse() * _from_rows(v, target.act(v), k.p)


def _singer_power(k: FpMatrix, t: FpMatrix) -> FpMatrix:
    """The power of t with the characteristic polynomial of k; the exponent is pinned down by determinants first"""
    p, r = k.p, t.order()
    d = t.det()
    start = discrete_log(d, k.det(), p)
    if start is None:
        raise StructureError("determinant lies outside the Singer subgroup")
    for e in range(start, r, n_order(d, p)):
        candidate = t ** e
        if gcd(e, r) == 1 and candidate.trace() == k.trace() and candidate.det() == k.det():
            return candidate
    raise StructureError(f"no element of the Singer subgroup of order {r} matches")


def _standard_cyclic(k: FpMatrix) -> Tuple[FpMatrix, FpMatrix]:
    """x and t with x^-1 <k> x = <t> = <s^((p^2-1)/r)> for the fixed Singer cycle s"""
    p = k.p
    s = _singer_generator(p)
    t = s ** ((p * p - 1) // k.order())
    return _cyclic_conjugator(k, _singer_power(k, t)), t


def _singer_normalizer(p: int) -> List[FpMatrix]:
    s = _singer_generator(p)
    f = _cyclic_conjugator(s, s ** p)
    powers = [s ** i for i in range(p * p - 1)]
    return powers + [x * f for x in powers]


def _least(elements: Sequence[FpMatrix], conjugators: Iterable[FpMatrix]) -> Tuple[FpMatrix, Tuple[FpMatrix, ...]]:
    best_key = None
    best_x = None
    for x in conjugators:
        xi = x.inverse()
        key = _key(xi * k * x for k in elements)
        if best_key is None or key < best_key:
            best_key, best_x = key, x
    return best_x, tuple(FpMatrix(elements[0].p, e) for e in best_key)


def _normalizer_gens(canonical: Sequence[FpMatrix], candidates: Iterable[FpMatrix]) -> Tuple[FpMatrix, ...]:
    identity = FpMatrix.identity(canonical[0].p, canonical[0].dim)
    canonical_set = set(canonical)
    gens = generating_subset(list(canonical), identity)
    normalizer = list(dict.fromkeys(x for x in candidates if all(g.conjugate(x) in canonical_set for g in gens)))
    return tuple(generating_subset(normalizer, identity))


def _singer_part(elements: Sequence[FpMatrix], p: int) -> List[FpMatrix]:
    """The abelian subgroup of index 2 inside a Singer cycle"""
    irreducible = sorted((k for k in elements if not invariant_lines([k], p)), key=lambda k: (-k.order(), k.entries))
    for c in irreducible:
        cent = [k for k in elements if k * c == c * k]
        if 2 * len(cent) == len(elements):
            return cent
    raise StructureError("irreducible subgroup normalizes no Singer cycle")


def _kind(generators: Sequence[FpMatrix], elements: Sequence[FpMatrix], p: int) -> Tuple[str, Optional[int]]:
    lines = invariant_lines(generators, p)
    if len(lines) >= 2:
        return REDUCIBLE, None
    if len(lines) == 1:
        raise PreconditionError("subgroup is reducible but not completely reducible")
    abelian = all(a * b == b * a for a in generators for b in generators)
    if abelian:
        return SINGER, len(elements)
    if _preserved_pairs(generators, p):
        return MONOMIAL, None
    cyclic = set(_singer_part(elements, p))
    outside = [k for k in elements if k not in cyclic]
    if any((t * t).is_identity() for t in outside):
        return SINGER_NORMALIZER, len(cyclic)
    return SINGER_TWISTED, len(cyclic)


@lru_cache(maxsize=512)
def _classified(p: int, dim: int, elements: FrozenSet[FpMatrix]
                ) -> Tuple[str, Optional[int], FpMatrix, Tuple[FpMatrix, ...], Tuple[FpMatrix, ...]]:
    identity = FpMatrix.identity(p, dim)
    ordered = sorted(elements)
    if dim == 1:
        return REDUCIBLE, None, identity, tuple(ordered), (FpMatrix(p, ((primitive_root(p),),)),)
    gens = generating_subset(ordered, identity)
    kind, parameter = _kind(gens, ordered, p)
    lines = invariant_lines(gens, p)
    if kind == REDUCIBLE and len(lines) == p + 1:
        return kind, parameter, identity, tuple(ordered), gl2_generators(p)
    mono = monomial_group(p)
    if kind == REDUCIBLE:
        u, v = lines
        x, canonical = _least(ordered, [_from_rows(u, v, p).inverse(), _from_rows(v, u, p).inverse()])
        return kind, parameter, x, canonical, _normalizer_gens(canonical, mono)
    if kind == SINGER:
        c = next(k for k in ordered if k.order() == len(ordered))
        x, t = _standard_cyclic(c)
        canonical = tuple(sorted(group_closure([t], identity)))
        return kind, parameter, x, canonical, _normalizer_gens(canonical, _singer_normalizer(p))
    if kind == MONOMIAL:
        starts = [_from_rows(u, v, p).inverse() for u, v in _preserved_pairs(gens, p)]
        x, canonical = _least(ordered, (x0 * m for x0 in starts for m in mono))
        canonical_gens = generating_subset(list(canonical), identity)
        candidates = [m * _from_rows(u, v, p) for u, v in _preserved_pairs(canonical_gens, p) for m in mono]
        return kind, parameter, x, canonical, _normalizer_gens(canonical, candidates)
    cyclic = _singer_part(ordered, p)
    c = next(k for k in cyclic if k.order() == len(cyclic))
    x0, _ = _standard_cyclic(c)
    normalizer = _singer_normalizer(p)
    x, canonical = _least(ordered, (x0 * n for n in normalizer))
    return kind, parameter, x, canonical, _normalizer_gens(canonical, normalizer)


def gl2_classify(generators: Sequence[FpMatrix], p: int, dim: int = 2) -> GL2ClassLabel:
    """
    Kind, canonical conjugate and normalizer of a cube-free p'-subgroup of GL_2(p)

    Reducible subgroups are diagonalized on their two eigenlines. Abelian
    irreducible ones are cyclic and go to <s^((p^2-1)/r)> for the fixed
    Singer cycle s. Monomial subgroups are moved onto the coordinate lines
    and the remaining subgroups normalize a Singer cycle, split or twisted;
    both are moved to contain the standard cyclic subgroup. The canonical
    conjugate is the least of those standard forms, taken over the
    monomial group or the Singer normalizer.
    """
    gens = [g for g in generators if not g.is_identity()]
    for g in gens:
        if g.p != p or g.dim != dim:
            raise PreconditionError("matrix does not belong to the given GL factor")
    identity = FpMatrix.identity(p, dim)
    elements = group_closure(gens, identity)
    order = len(elements)
    if order % p == 0:
        raise PreconditionError(f"subgroup order {order} is divisible by {p}")
    if any(e >= 3 for e in factorint(order).values()):
        raise PreconditionError(f"subgroup order {order} is not cube-free")
    kind, parameter, conjugator, canonical, normalizer_gens = _classified(p, dim, frozenset(elements))
    logger.debug(f"GL_{dim}({p}) subgroup of order {order}: {kind}")
    return GL2ClassLabel(kind, p, dim, order, parameter, conjugator, canonical, normalizer_gens)


def conjugate_in_gl_products(generators: Sequence[GLProductElement], target_generators: Sequence[GLProductElement],
                             signature: Sequence[Tuple[int, int]]) -> Optional[GLProductElement]:
    """
    g with g^-1 K g = K~ in a product of GL_1 and GL_2 factors, or None

    Every factor projection of K is aligned with that of K~ through the
    canonical conjugates; the subdirect product is then matched by a
    backtrack over the normalizers of the target projections.
    """
    signature = tuple(signature)
    for g in list(generators) + list(target_generators):
        if g.signature != signature:
            raise PreconditionError("generator signature differs from the product signature")
    identity = GLProductElement.identity(signature)
    source = group_closure(generators, identity)
    target = group_closure(target_generators, identity)
    if len(source) != len(target):
        return None
    alphas: List[FpMatrix] = []
    normalizers: List[List[FpMatrix]] = []
    for i, (p, dim) in enumerate(signature):
        label = gl2_classify([g.components[i] for g in generators], p, dim)
        target_label = gl2_classify([g.components[i] for g in target_generators], p, dim)
        if label.canonical != target_label.canonical:
            logger.debug(f"factor {i} over GF({p}) has a different canonical conjugate")
            return None
        back = target_label.conjugator.inverse()
        alphas.append(label.conjugator * back)
        if dim == 1:
            normalizers.append([FpMatrix.identity(p, dim)])
        else:
            normalizers.append(group_closure([n.conjugate(back) for n in target_label.normalizer_gens],
                                             FpMatrix.identity(p, dim)))
    alpha = GLProductElement(tuple(alphas))
    moved = [k.conjugate(alpha) for k in source]
    prefixes = [{k.components[:j + 1] for k in target} for j in range(len(signature))]

    def search(j: int, chosen: Tuple[FpMatrix, ...]) -> Optional[Tuple[FpMatrix, ...]]:
        if j == len(signature):
            return chosen
        for b in normalizers[j]:
            trial = chosen + (b,)
            projection = {tuple(m.conjugate(c) for m, c in zip(k.components[:j + 1], trial)) for k in moved}
            if projection == prefixes[j]:
                found = search(j + 1, trial)
                if found is not None:
                    return found
        return None

    betas = search(0, ())
    if betas is None:
        return None
    result = alpha * GLProductElement(betas)
    target_set = set(target)
    if {k.conjugate(result) for k in source} != target_set:
        raise StructureError("conjugator search returned a wrong element")
    return result
