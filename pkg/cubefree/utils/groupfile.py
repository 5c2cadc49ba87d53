"""
Group and isomorphism files

A group file is JSON, ``{"degree": d, "generators": ["(1,2,3)", ...], "name": ...}``,
or plain text: the degree on the first line and one generator per line
after it, with ``#`` starting a comment. Parse errors carry the line and
column of the problem.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from loguru import logger

from cubefree.core.errors import GroupParseError
from cubefree.core.homs import GroupHom
from cubefree.core.perm import PermGroup, parse_permutation

PathLike = Union[str, Path]


def group_from_dict(data: Dict[str, Any]) -> PermGroup:
    """Build a group from the dictionary form of a group file"""
    if not isinstance(data, dict):
        raise GroupParseError("group file must hold a JSON object")
    try:
        degree = int(data["degree"])
    except (KeyError, TypeError, ValueError) as exc:
        raise GroupParseError("group file needs an integer 'degree'") from exc
    if degree < 1:
        raise GroupParseError(f"degree must be positive, got {degree}")
    gens = data.get("generators", [])
    if not isinstance(gens, list):
        raise GroupParseError("'generators' must be a list of cycle strings")
    perms = []
    for index, text in enumerate(gens, start=1):
        if not isinstance(text, str):
            raise GroupParseError(f"generator {index} is not a string")
        try:
            perms.append(parse_permutation(text, degree))
        except GroupParseError as exc:
            raise GroupParseError(f"generator {index}: {exc}") from exc
    return PermGroup(perms, degree, name=data.get("name"))


def group_to_dict(group: PermGroup, name: Optional[str] = None) -> Dict[str, Any]:
    data: Dict[str, Any] = {"degree": group.degree, "generators": group.to_strings()}
    if name or group.name:
        data["name"] = name or group.name
    return data


def _parse_text(text: str) -> PermGroup:
    degree: Optional[int] = None
    perms = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        offset = len(line) - len(line.lstrip())
        if degree is None:
            if not stripped.isdigit() or int(stripped) < 1:
                raise GroupParseError(f"expected a positive degree, found {stripped!r}", line=line_no, column=offset + 1)
            degree = int(stripped)
            continue
        try:
            perms.append(parse_permutation(stripped, degree))
        except GroupParseError as exc:
            raise GroupParseError(str(exc).split(" (column")[0], line=line_no,
                                  column=offset + (exc.column or 1)) from exc
    if degree is None:
        raise GroupParseError("group file is empty", line=1, column=1)
    return PermGroup(perms, degree)


def parse_group(text: str) -> PermGroup:
    """Parse the JSON or the plain text form"""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GroupParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
        return group_from_dict(data)
    return _parse_text(text)


def load_group(path: PathLike) -> PermGroup:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GroupParseError(f"cannot read {path}: {exc.strerror}") from exc
    group = parse_group(text)
    if group.name is None:
        group.name = path.stem
    logger.debug(f"loaded {path.name}: degree {group.degree}, {len(group.generators)} generators")
    return group


def dump_group(group: PermGroup, path: PathLike, name: Optional[str] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(group_to_dict(group, name), indent=2) + "\n", encoding="utf-8")
    return path


def mapping_to_dict(hom: GroupHom, transcript: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Generator map of an isomorphism, keyed by the domain generator strings"""
    data: Dict[str, Any] = {
        "domain_degree": hom.domain.degree,
        "codomain_degree": hom.codomain.degree,
        "mapping": hom.mapping(),
    }
    if transcript is not None:
        data["verification"] = transcript
    return data


def dump_mapping(hom: GroupHom, path: PathLike, transcript: Optional[Dict[str, Any]] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(mapping_to_dict(hom, transcript), indent=2) + "\n", encoding="utf-8")
    return path


def load_mapping(path: PathLike, domain: PermGroup, codomain: PermGroup) -> GroupHom:
    """
    Read a mapping file back as a homomorphism between the given groups

    The assignment is re-verified; a map that does not extend to a
    homomorphism raises VerificationError.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GroupParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    mapping = data.get("mapping")
    if not isinstance(mapping, dict):
        raise GroupParseError("mapping file needs a 'mapping' object")
    sources = [parse_permutation(k, domain.degree) for k in mapping]
    images = [parse_permutation(v, codomain.degree) for v in mapping.values()]
    if not sources:
        return GroupHom(domain, codomain, [codomain.identity] * len(domain.generators))
    return GroupHom.from_images(domain, codomain, sources, images, name=path.stem)
