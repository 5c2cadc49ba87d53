"""
Catalog of small groups of cube-free order

A solvable group of cube-free order has an abelian normal Sylow subgroup
N (cyclic of order p or p^2, or elementary of order p^2) with a
complement H of smaller order, so it is H ⋉ N for some action
H -> Aut(N). Candidates are built from every such triple, plus
PSL_2(p) × H when the order allows it, and deduplicated. Entries of
order up to the oracle limit are certified by brute force; larger ones
are deduplicated with the structured test and labelled "sample".
"""

import json
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from loguru import logger
from sympy import n_order

from cubefree.core.config import EngineConfig, get_config
from cubefree.core.errors import GroupParseError, PreconditionError, StructureError
from cubefree.core.grouptheory import factor_integer, require_cubefree
from cubefree.core.homs import GroupHom, graph_order
from cubefree.core.iso import isomorphism_cubefree, psl2_parameter, standard_psl2
from cubefree.core.modp import FpMatrix, companion_matrix, gl_elements
from cubefree.core.oracle import deduplicate, invariants, small_generating_set
from cubefree.core.perm import Permutation, PermGroup
from cubefree.core.presentations import (ConstructivePresentation, Presentation, constructive_presentation,
                                         semidirect_presentation)

Recipe = Dict[str, Any]
Label = Union[int, FpMatrix]


@dataclass(frozen=True)
class SylowModule:
    """Abelian group of order p or p^2 acting regularly on its own elements"""

    p: int
    exponent: int
    elementary: bool = False

    @property
    def size(self) -> int:
        return self.p ** self.exponent

    @property
    def name(self) -> str:
        if self.elementary:
            return f"C{self.p}^2"
        return f"C{self.size}"

    def to_dict(self) -> Dict[str, Any]:
        return {"p": self.p, "exponent": self.exponent, "elementary": self.elementary}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SylowModule":
        return cls(int(data["p"]), int(data["exponent"]), bool(data.get("elementary", False)))

    def translations(self) -> List[Permutation]:
        m, p = self.size, self.p
        if not self.elementary:
            return [Permutation([(i + 1) % m for i in range(m)])]
        first = Permutation([((i // p + 1) % p) * p + i % p for i in range(m)])
        second = Permutation([(i // p) * p + (i % p + 1) % p for i in range(m)])
        return [first, second]

    def automorphism(self, label: Label) -> Permutation:
        m, p = self.size, self.p
        if not self.elementary:
            return Permutation([(int(label) * i) % m for i in range(m)])
        images = []
        for i in range(m):
            x, y = label.act((i // p, i % p))
            images.append(x * p + y)
        return Permutation(images)

    def label_to_json(self, label: Label) -> Any:
        return label.to_list() if self.elementary else int(label)

    def label_from_json(self, data: Any) -> Label:
        if self.elementary:
            return FpMatrix(self.p, tuple(tuple(int(v) for v in row) for row in data))
        return int(data)

    def labels(self, divides: int) -> List[Label]:
        """Every automorphism whose order divides `divides`"""
        if not self.elementary:
            return _unit_labels(self.size, divides)
        return _matrix_labels(self.p, divides)

    def class_labels(self, divides: int) -> List[Label]:
        """One automorphism per conjugacy class of Aut(N), order dividing `divides`"""
        if not self.elementary:
            return _unit_labels(self.size, divides)
        return _semisimple_class_labels(self.p, divides)


@lru_cache(maxsize=None)
def _unit_labels(m: int, divides: int) -> List[int]:
    return [u for u in range(1, m) if gcd(u, m) == 1 and divides % n_order(u, m) == 0]


@lru_cache(maxsize=None)
def _matrix_labels(p: int, divides: int) -> List[FpMatrix]:
    return [m for m in gl_elements(p, 2) if (m ** divides).is_identity()]


@lru_cache(maxsize=None)
def _semisimple_class_labels(p: int, divides: int) -> List[FpMatrix]:
    # orders prime to p: scalars, split diagonals and irreducible companions
    found: List[FpMatrix] = []
    for a in range(1, p):
        for b in range(a, p):
            found.append(FpMatrix.diagonal(p, a, b))
    for c0 in range(1, p):
        for c1 in range(p):
            if all((x * x - c1 * x - c0) % p for x in range(p)):
                found.append(companion_matrix(p, c0, c1))
    return [m for m in found if (m ** divides).is_identity()]


@dataclass
class CatalogEntry:
    order: int
    index: int
    recipe: Recipe
    group: PermGroup
    certified: bool = True

    @property
    def name(self) -> str:
        return f"{self.order}#{self.index}"

    def status(self) -> str:
        return "certified" if self.certified else "sample"

    def to_dict(self) -> Dict[str, Any]:
        return {"order": self.order, "index": self.index, "recipe": self.recipe,
                "degree": self.group.degree, "status": self.status()}


def _direct_product(first: PermGroup, second: PermGroup, name: Optional[str] = None) -> PermGroup:
    d1, d2 = first.degree, second.degree
    gens = [g.direct_sum(Permutation.identity(d2)) for g in first.generators]
    gens += [Permutation.identity(d1).direct_sum(h) for h in second.generators]
    return PermGroup(gens, d1 + d2, name=name, order_hint=first.order() * second.order())


def semidirect_product(top: PermGroup, module: SylowModule, labels: Sequence[Label],
                       name: Optional[str] = None) -> PermGroup:
    """
    H ⋉ N with the i-th generator of a small generating set of H acting as labels[i]

    N acts on its own points by translations and H on them by the given
    automorphisms; the first deg(H) points carry H itself.
    """
    translations = module.translations()
    if top.order() == 1:
        return PermGroup(translations, module.size, name=name or module.name, order_hint=module.size)
    gens = small_generating_set(top)
    if len(labels) != len(gens):
        raise PreconditionError(f"{len(gens)} top generators but {len(labels)} automorphisms")
    d = top.degree
    acting = [g.direct_sum(module.automorphism(a)) for g, a in zip(gens, labels)]
    acting += [Permutation.identity(d).direct_sum(t) for t in translations]
    return PermGroup(acting, d + module.size, name=name, order_hint=top.order() * module.size)


def semidirect_presentation_images(top: PermGroup, module: SylowModule, labels: Sequence[Label],
                                   outer: Optional[ConstructivePresentation] = None,
                                   inner: Optional[ConstructivePresentation] = None
                                   ) -> Tuple[Presentation, List[Permutation]]:
    """
    Presentation of H ⋉ N assembled from presentations of H and N, with its
    symbols evaluated in `semidirect_product(top, module, labels)`
    """
    translations = PermGroup(module.translations(), module.size, order_hint=module.size)
    outer = outer or constructive_presentation(top)
    inner = inner or constructive_presentation(translations)
    gens = small_generating_set(top)
    autos = [module.automorphism(a) for a in labels]
    action = GroupHom.from_images(top, PermGroup(autos, module.size), gens, autos)
    d = top.degree
    thetas: List[GroupHom] = []
    images: List[Permutation] = []
    for y in outer.images:
        sigma = action(y)
        thetas.append(GroupHom(translations, translations, [t.conjugate(sigma) for t in translations.generators]))
        images.append(y.direct_sum(sigma))
    images += [Permutation.identity(d).direct_sum(t) for t in inner.images]
    names = [f"h{i + 1}" for i in range(outer.generator_count)]
    return semidirect_presentation(thetas, inner, outer.relations, names), images


def realize(recipe: Recipe) -> PermGroup:
    """Rebuild the group described by a catalog recipe"""
    kind = recipe.get("kind")
    if kind == "trivial":
        return PermGroup.trivial(1)
    if kind == "psl2":
        return standard_psl2(int(recipe["p"]))
    if kind == "direct":
        first, second = (realize(r) for r in recipe["factors"])
        return _direct_product(first, second, name=recipe.get("name"))
    if kind == "semidirect":
        module = SylowModule.from_dict(recipe["module"])
        labels = [module.label_from_json(a) for a in recipe["action"]]
        return semidirect_product(realize(recipe["top"]), module, labels, name=recipe.get("name"))
    raise GroupParseError(f"unknown recipe kind {kind!r}")


def _actions(top: PermGroup, module: SylowModule) -> Iterator[Tuple[Label, ...]]:
    """Homomorphisms H -> Aut(N) as generator images, first image up to conjugacy"""
    if top.order() == 1:
        yield ()
        return
    gens = small_generating_set(top)
    prefix_orders = [PermGroup(gens[:k + 1], top.degree).order() for k in range(len(gens))]

    def extend(k: int, chosen: Tuple[Label, ...]) -> Iterator[Tuple[Label, ...]]:
        if k == len(gens):
            yield chosen
            return
        pool = module.class_labels(gens[k].order()) if k == 0 else module.labels(gens[k].order())
        for label in pool:
            trial = chosen + (label,)
            images = [module.automorphism(a) for a in trial]
            if k > 0 and graph_order(gens[:k + 1], images) != prefix_orders[k]:
                continue
            yield from extend(k + 1, trial)

    yield from extend(0, ())


def _modules(p: int, e: int) -> List[SylowModule]:
    if e == 1:
        return [SylowModule(p, 1)]
    return [SylowModule(p, 2), SylowModule(p, 2, elementary=True)]


def _candidates(n: int, cache: Dict[int, List[Tuple[Recipe, PermGroup]]],
                cfg: EngineConfig) -> List[Tuple[Recipe, PermGroup]]:
    found: List[Tuple[Recipe, PermGroup]] = []
    for p, e in factor_integer(n):
        rest = n // p ** e
        for module in _modules(p, e):
            inner = constructive_presentation(PermGroup(module.translations(), module.size))
            for top_recipe, top in _groups_of_order(rest, cache, cfg):
                outer = constructive_presentation(top) if top.order() > 1 else None
                for labels in _actions(top, module):
                    recipe = {"kind": "semidirect", "module": module.to_dict(), "top": top_recipe,
                              "action": [module.label_to_json(a) for a in labels]}
                    group = semidirect_product(top, module, labels)
                    if outer is not None:
                        pres, images = semidirect_presentation_images(top, module, labels, outer, inner)
                        if not pres.holds_in(images, group.identity):
                            raise StructureError(f"{recipe} violates its semidirect presentation")
                    found.append((recipe, group))
    for q in range(5, n + 1):
        simple_order = q * (q * q - 1) // 2
        if simple_order > n:
            break
        if n % simple_order or psl2_parameter(simple_order) != q:
            continue
        psl = standard_psl2(q)
        if n == simple_order:
            found.append(({"kind": "psl2", "p": q}, psl))
            continue
        for rest_recipe, rest in _groups_of_order(n // simple_order, cache, cfg):
            recipe = {"kind": "direct", "factors": [{"kind": "psl2", "p": q}, rest_recipe]}
            found.append((recipe, _direct_product(psl, rest)))
    return found


def _structured_deduplicate(groups: Sequence[PermGroup], cfg: EngineConfig) -> List[PermGroup]:
    buckets: Dict[Tuple, List[PermGroup]] = {}
    kept: List[PermGroup] = []
    for g in groups:
        bucket = buckets.setdefault(invariants(g), [])
        if any(isomorphism_cubefree(h, g, cfg) is not None for h in bucket):
            continue
        bucket.append(g)
        kept.append(g)
    return kept


def _groups_of_order(n: int, cache: Dict[int, List[Tuple[Recipe, PermGroup]]],
                     cfg: EngineConfig) -> List[Tuple[Recipe, PermGroup]]:
    if n in cache:
        return cache[n]
    if n == 1:
        cache[n] = [({"kind": "trivial"}, PermGroup.trivial(1))]
        return cache[n]
    candidates = _candidates(n, cache, cfg)
    groups = [g for _, g in candidates]
    if n <= cfg.oracle_limit:
        kept = deduplicate(groups, cfg)
    else:
        kept = _structured_deduplicate(groups, cfg)
    kept_ids = {id(g) for g in kept}
    cache[n] = [(r, g) for r, g in candidates if id(g) in kept_ids]
    logger.info(f"order {n}: {len(cache[n])} groups from {len(candidates)} candidates")
    return cache[n]


def build_catalog(orders: Sequence[int], config: Optional[EngineConfig] = None) -> List[CatalogEntry]:
    """
    Groups of each requested cube-free order, pairwise non-isomorphic per order

    Raises NotCubefreeError for an order divisible by a cube.
    """
    cfg = get_config(config)
    for n in orders:
        if n < 1:
            raise PreconditionError(f"order must be positive, got {n}")
        require_cubefree(n)
    cache: Dict[int, List[Tuple[Recipe, PermGroup]]] = {}
    entries: List[CatalogEntry] = []
    for n in sorted(set(orders)):
        for index, (recipe, group) in enumerate(_groups_of_order(n, cache, cfg), start=1):
            group.name = group.name or f"{n}#{index}"
            entries.append(CatalogEntry(n, index, recipe, group, certified=n <= cfg.oracle_limit))
    return entries


def save_catalog(entries: Sequence[CatalogEntry], directory: Path) -> Path:
    """Write one group file per entry plus manifest.json; returns the manifest path"""
    from cubefree.utils.groupfile import dump_group

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest: List[Dict[str, Any]] = []
    for entry in entries:
        filename = f"order_{entry.order}_{entry.index}.json"
        dump_group(entry.group, directory / filename, name=entry.name)
        record = entry.to_dict()
        record["file"] = filename
        manifest.append(record)
    path = directory / "manifest.json"
    path.write_text(json.dumps({"entries": manifest}, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info(f"catalog of {len(manifest)} groups written to {directory}")
    return path


def load_catalog(directory: Path) -> List[CatalogEntry]:
    from cubefree.utils.groupfile import load_group

    directory = Path(directory)
    path = directory / "manifest.json"
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GroupParseError(f"{path}: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    entries = []
    for record in data.get("entries", []):
        group = load_group(directory / record["file"])
        entries.append(CatalogEntry(int(record["order"]), int(record["index"]), record["recipe"], group,
                                    certified=record.get("status") == "certified"))
    return entries
