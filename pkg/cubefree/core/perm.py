"""
Permutations and permutation groups with deterministic stabilizer chains

Points are 0-based internally and 1-based in every textual form. Products
are read left to right: ``(p * q)(x) == q(p(x))``.
"""

import random
from math import lcm
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from loguru import logger

from cubefree.core.errors import DegreeMismatchError, GroupParseError
from cubefree.core.slp import SLP, Word, reduce_word, word_inverse

_IDENTITY_IMAGES: Dict[int, Tuple[int, ...]] = {}


def _identity_images(degree: int) -> Tuple[int, ...]:
    images = _IDENTITY_IMAGES.get(degree)
    if images is None:
        images = tuple(range(degree))
        _IDENTITY_IMAGES[degree] = images
    return images


class Permutation:
    """Immutable permutation of {0, ..., degree-1}"""

    __slots__ = ("_images", "_hash", "_inverse")

    def __init__(self, images: Iterable[int]):
        self._images = tuple(images)
        self._hash = None
        self._inverse = None

    @classmethod
    def _wrap(cls, images: Tuple[int, ...]) -> "Permutation":
        perm = cls.__new__(cls)
        perm._images = images
        perm._hash = None
        perm._inverse = None
        return perm

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(_identity_images(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 0-based cycles"""
        images = list(range(degree))
        for cycle in cycles:
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls._wrap(tuple(images))

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> Tuple[int, ...]:
        return self._images

    def __call__(self, point: int) -> int:
        return self._images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other._images) != len(self._images):
            raise DegreeMismatchError(f"degrees {self.degree} and {other.degree} differ")
        o = other._images
        return Permutation._wrap(tuple([o[i] for i in self._images]))

    def inverse(self) -> "Permutation":
        if self._inverse is None:
            inv = [0] * len(self._images)
            for i, j in enumerate(self._images):
                inv[j] = i
            self._inverse = Permutation._wrap(tuple(inv))
            self._inverse._inverse = self
        return self._inverse

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def __pow__(self, exponent: int) -> "Permutation":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Permutation.identity(self.degree)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def is_identity(self) -> bool:
        return self._images == _identity_images(len(self._images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point"""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self._images[start] == start:
                continue
            cycle = [start]
            seen[start] = True
            point = self._images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self._images[point]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def support(self) -> List[int]:
        return [i for i, j in enumerate(self._images) if i != j]

    def smallest_moved_point(self) -> Optional[int]:
        for i, j in enumerate(self._images):
            if i != j:
                return i
        return None

    def conjugate(self, g: "Permutation") -> "Permutation":
        """g^-1 * self * g"""
        return g.inverse() * self * g

    def commutator(self, other: "Permutation") -> "Permutation":
        """self^-1 * other^-1 * self * other"""
        return self.inverse() * other.inverse() * self * other

    def direct_sum(self, other: "Permutation") -> "Permutation":
        """Act with self on the first points and with other on the points after them"""
        shift = self.degree
        return Permutation._wrap(self._images + tuple(shift + j for j in other._images))

    def restrict(self, start: int, stop: int) -> "Permutation":
        """Action on the invariant block [start, stop), renumbered from 0"""
        return Permutation._wrap(tuple(self._images[i] - start for i in range(start, stop)))

    def extend(self, degree: int) -> "Permutation":
        """Same permutation on a larger domain, fixing the new points"""
        if degree < self.degree:
            raise DegreeMismatchError("cannot shrink a permutation")
        return Permutation._wrap(self._images + tuple(range(self.degree, degree)))

    def to_cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cycles)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __lt__(self, other: "Permutation") -> bool:
        return self._images < other._images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._images)
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation('{self.to_cycle_string()}', degree={self.degree})"

    def __str__(self) -> str:
        return self.to_cycle_string()


def parse_permutation(text: str, degree: int) -> Permutation:
    """
    Parse 1-based cycle notation such as ``(1,2)(3,4,5)`` or ``()``

    Raises GroupParseError (with the 1-based column of the problem) on
    malformed text, repeated points, or points outside 1..degree.
    """
    text = text.strip()
    if text == "()":
        return Permutation.identity(degree)
    if not text:
        raise GroupParseError("empty permutation", column=1)
    cycles: List[List[int]] = []
    used: Set[int] = set()
    pos = 0
    while pos < len(text):
        if text[pos] != "(":
            raise GroupParseError(f"expected '(' but found {text[pos]!r}", column=pos + 1)
        pos += 1
        cycle: List[int] = []
        while True:
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            if start == pos:
                found = repr(text[pos]) if pos < len(text) else "end of text"
                raise GroupParseError(f"expected a point but found {found}", column=pos + 1)
            point = int(text[start:pos])
            if point < 1 or point > degree:
                raise GroupParseError(f"point {point} outside 1..{degree}", column=start + 1)
            if point - 1 in used:
                raise GroupParseError(f"point {point} repeated", column=start + 1)
            used.add(point - 1)
            cycle.append(point - 1)
            if pos >= len(text):
                raise GroupParseError("unterminated cycle", column=pos + 1)
            if text[pos] == ",":
                pos += 1
                continue
            if text[pos] == ")":
                pos += 1
                break
            raise GroupParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
        cycles.append(cycle)
    return Permutation.from_cycles(cycles, degree)


class _Level:
    """One level of a stabilizer chain"""

    __slots__ = ("base_point", "gens", "orbit", "transversal", "tree", "inverse_cache", "checked")

    def __init__(self, base_point: int, identity: Permutation):
        self.base_point = base_point
        self.gens: List[int] = []
        self.orbit: List[int] = [base_point]
        self.transversal: Dict[int, Permutation] = {base_point: identity}
        # point -> (parent point, strong generator index); representatives never change once set
        self.tree: Dict[int, Optional[Tuple[int, int]]] = {base_point: None}
        self.inverse_cache: Dict[int, Permutation] = {}
        self.checked: Set[Tuple[int, int]] = set()

    def inverse_rep(self, point: int) -> Permutation:
        inv = self.inverse_cache.get(point)
        if inv is None:
            inv = self.transversal[point].inverse()
            self.inverse_cache[point] = inv
        return inv

    def close_orbit(self, strong: List[Permutation]) -> None:
        i = 0
        while i < len(self.orbit):
            point = self.orbit[i]
            rep = self.transversal[point]
            for idx in self.gens:
                image = strong[idx](point)
                if image not in self.transversal:
                    self.transversal[image] = rep * strong[idx]
                    self.tree[image] = (point, idx)
                    self.orbit.append(image)
            i += 1


class StabilizerChain:
    """
    Deterministic incremental Schreier-Sims

    The base starts with `base_prefix` and is extended by the smallest
    point moved by each generator that fixes the current base. Every strong
    generator records a word over the input generators and earlier strong
    generators so membership words can be rewritten into the inputs.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 base_prefix: Sequence[int] = (), order_hint: Optional[int] = None):
        self.degree = degree
        self.identity = Permutation.identity(degree)
        self.input_count = len(generators)
        self.strong: List[Permutation] = []
        # SLP lines: slot k < input_count is input k, slot input_count + t is strong[t]
        self.strong_lines: List[Word] = []
        self.levels: List[_Level] = []
        for point in base_prefix:
            self.levels.append(_Level(point, self.identity))
        for idx, gen in enumerate(generators):
            if gen.is_identity():
                continue
            depth = self._first_moved_level(gen)
            self._insert(gen, ((idx, 1),), 0, depth)
        self._run(order_hint)

    @property
    def base(self) -> List[int]:
        return [level.base_point for level in self.levels]

    def order(self) -> int:
        result = 1
        for level in self.levels:
            result *= len(level.orbit)
        return result

    def _first_moved_level(self, perm: Permutation) -> int:
        for i, level in enumerate(self.levels):
            if perm(level.base_point) != level.base_point:
                return i
        return len(self.levels)

    def _insert(self, perm: Permutation, line: Word, lo: int, hi: int) -> None:
        if hi == len(self.levels):
            self.levels.append(_Level(perm.smallest_moved_point(), self.identity))
        index = len(self.strong)
        self.strong.append(perm)
        self.strong_lines.append(line)
        for level in self.levels[lo:hi + 1]:
            level.gens.append(index)
            level.close_orbit(self.strong)

    def _path(self, level_index: int, point: int) -> Word:
        """Word over strong generator slots for the transversal element of `point`"""
        level = self.levels[level_index]
        letters = []
        node = level.tree[point]
        while node is not None:
            parent, idx = node
            letters.append((self.input_count + idx, 1))
            node = level.tree[parent]
        letters.reverse()
        return tuple(letters)

    def sift(self, perm: Permutation, start: int = 0,
             stop: Optional[int] = None) -> Tuple[Permutation, int, List[Tuple[int, int]]]:
        """
        Strip `perm` through levels [start, stop)

        Returns the residue, the first level where stripping failed (or
        `stop`), and the trail of (level, point) pairs used.
        """
        stop = len(self.levels) if stop is None else stop
        trail = []
        for i in range(start, stop):
            level = self.levels[i]
            point = perm(level.base_point)
            if point not in level.transversal:
                return perm, i, trail
            if point != level.base_point:
                perm = perm * level.inverse_rep(point)
            trail.append((i, point))
        return perm, stop, trail

    def trail_word(self, trail: List[Tuple[int, int]]) -> Word:
        """Word (over strong slots) of the product of the transversal elements in `trail`"""
        letters: List[Tuple[int, int]] = []
        for level_index, point in reversed(trail):
            letters.extend(self._path(level_index, point))
        return reduce_word(letters)

    def _run(self, order_hint: Optional[int]) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            if order_hint is not None and self.order() == order_hint:
                return
            modified = self._check_level(i)
            i = i - 1 if modified is None else modified

    def _check_level(self, i: int) -> Optional[int]:
        level = self.levels[i]
        k = 0
        while k < len(level.orbit):
            beta = level.orbit[k]
            k += 1
            for idx in list(level.gens):
                if (beta, idx) in level.checked:
                    continue
                level.checked.add((beta, idx))
                s = self.strong[idx]
                image = s(beta)
                schreier = level.transversal[beta] * s * level.inverse_rep(image)
                if schreier.is_identity():
                    continue
                residue, depth, trail = self.sift(schreier, i + 1)
                if residue.is_identity() and depth == len(self.levels):
                    continue
                line = reduce_word(
                    self._path(i, beta)
                    + ((self.input_count + idx, 1),)
                    + word_inverse(self._path(i, image))
                    + word_inverse(self.trail_word(trail))
                )
                self._insert(residue, line, i + 1, depth)
                return depth
        return None

    def level_generators(self, k: int) -> List[Permutation]:
        """Strong generators fixing the first k base points"""
        points = self.base[:k]
        return [s for s in self.strong if all(s(b) == b for b in points)]


class PermGroup:
    """Permutation group given by generators, with a lazily built stabilizer chain"""

    def __init__(self, generators: Iterable[Permutation], degree: Optional[int] = None, *,
                 name: Optional[str] = None, order_hint: Optional[int] = None,
                 base_prefix: Sequence[int] = ()):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree is required for a group without generators")
            degree = gens[0].degree
        for gen in gens:
            if gen.degree != degree:
                raise DegreeMismatchError(f"generator of degree {gen.degree} in a group of degree {degree}")
        self._degree = degree
        self._generators = gens
        self.name = name
        self._order_hint = order_hint
        self._base_prefix = tuple(base_prefix)
        self._chain: Optional[StabilizerChain] = None

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls((), degree)

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> Tuple[Permutation, ...]:
        return self._generators

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self._degree)

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self._degree, self._generators, self._base_prefix, self._order_hint)
            logger.trace(f"chain built: degree={self._degree} order={self._chain.order()} base={self._chain.base}")
        return self._chain

    @property
    def base(self) -> List[int]:
        return self.chain.base

    def build_chain(self) -> "PermGroup":
        _ = self.chain
        return self

    def order(self) -> int:
        return self.chain.order()

    def __len__(self) -> int:
        return self.order()

    def _check_degree(self, perm: Permutation) -> None:
        if perm.degree != self._degree:
            raise DegreeMismatchError(f"element of degree {perm.degree} tested against a group of degree {self._degree}")

    def contains(self, perm: Permutation) -> bool:
        self._check_degree(perm)
        residue, depth, _ = self.chain.sift(perm)
        return depth == len(self.chain.levels) and residue.is_identity()

    def __contains__(self, perm: Permutation) -> bool:
        return self.contains(perm)

    def sift_word(self, perm: Permutation) -> Optional[Word]:
        """Word over the strong generators (0-based indices) equal to perm, or None"""
        self._check_degree(perm)
        chain = self.chain
        residue, depth, trail = chain.sift(perm)
        if depth != len(chain.levels) or not residue.is_identity():
            return None
        shift = chain.input_count
        return tuple((gen - shift, exp) for gen, exp in chain.trail_word(trail))

    def straight_line_program(self, perm: Permutation) -> Optional[SLP]:
        """SLP over the input generators evaluating to perm, or None"""
        self._check_degree(perm)
        chain = self.chain
        residue, depth, trail = chain.sift(perm)
        if depth != len(chain.levels) or not residue.is_identity():
            return None
        program = SLP(chain.input_count, tuple(chain.strong_lines), ())
        program, slot = program.append_line(chain.trail_word(trail))
        return program.with_outputs([slot])

    @property
    def strong_generators(self) -> List[Permutation]:
        return list(self.chain.strong)

    def random_element(self, rng: random.Random) -> Permutation:
        result = self.identity
        for level in reversed(self.chain.levels):
            result = result * level.transversal[rng.choice(level.orbit)]
        return result

    def elements(self) -> Iterator[Permutation]:
        """Every element exactly once, in a deterministic order"""
        levels = list(reversed(self.chain.levels))

        def walk(i: int, prefix: Permutation) -> Iterator[Permutation]:
            if i == len(levels):
                yield prefix
                return
            level = levels[i]
            for point in level.orbit:
                yield from walk(i + 1, prefix * level.transversal[point])

        return walk(0, self.identity)

    def is_abelian(self) -> bool:
        gens = self._generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self._degree == other.degree and all(other.contains(g) for g in self._generators)

    def is_normal_in(self, other: "PermGroup") -> bool:
        """True when self is normalized by every generator of other"""
        return all(self.contains(h.conjugate(g)) for g in other.generators for h in self._generators)

    def same_group(self, other: "PermGroup") -> bool:
        return self.order() == other.order() and self.is_subgroup_of(other)

    def subgroup(self, generators: Iterable[Permutation], **kwargs) -> "PermGroup":
        return PermGroup(generators, self._degree, **kwargs)

    def closure(self, extra: Iterable[Permutation], **kwargs) -> "PermGroup":
        return PermGroup(self._generators + tuple(extra), self._degree, **kwargs)

    def with_base(self, base_prefix: Sequence[int]) -> "PermGroup":
        """Same group whose chain starts with the given base points"""
        return PermGroup(self._generators, self._degree, name=self.name,
                         order_hint=self.order() if self._chain is not None else self._order_hint,
                         base_prefix=base_prefix)

    def orbit(self, point: int) -> List[int]:
        orbit = [point]
        seen = {point}
        for p in orbit:
            for g in self._generators:
                q = g(p)
                if q not in seen:
                    seen.add(q)
                    orbit.append(q)
        return orbit

    def to_strings(self) -> List[str]:
        return [g.to_cycle_string() for g in self._generators]

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<PermGroup{label} degree={self._degree} gens={len(self._generators)}>"


def orbit_stabilizer(group: PermGroup, point: Hashable,
                     act: Callable[[Any, Permutation], Any]) -> Tuple[List[Any], PermGroup]:
    """
    Orbit of `point` under `act` and its stabilizer in `group`

    The stabilizer is grown from Schreier generators until its order
    reaches |group| / |orbit|.
    """
    gens = group.generators
    reps: Dict[Any, Permutation] = {point: group.identity}
    orbit = [point]
    for p in orbit:
        rep = reps[p]
        for s in gens:
            q = act(p, s)
            if q not in reps:
                reps[q] = rep * s
                orbit.append(q)
    target = group.order() // len(orbit)
    stabilizer = PermGroup.trivial(group.degree)
    if target == 1:
        return orbit, stabilizer
    found: List[Permutation] = []
    for p in orbit:
        rep = reps[p]
        for s in gens:
            schreier = rep * s * reps[act(p, s)].inverse()
            if schreier.is_identity() or stabilizer.contains(schreier):
                continue
            found.append(schreier)
            stabilizer = PermGroup(found, group.degree, order_hint=target)
            if stabilizer.order() == target:
                return orbit, stabilizer
    return orbit, stabilizer


def element_centralizer(group: PermGroup, element: Permutation) -> PermGroup:
    """C_group(element) as the stabilizer of element under conjugation"""
    _, stabilizer = orbit_stabilizer(group, element, lambda x, g: x.conjugate(g))
    return stabilizer
