import json

import pytest

from cubefree.core.errors import GroupParseError, VerificationError
from cubefree.core.iso import isomorphism_cubefree
from cubefree.core.oracle import scramble
from cubefree.utils.groupfile import (dump_group, dump_mapping, group_from_dict, load_group, load_mapping,
                                      mapping_to_dict, parse_group)


def test_plain_text_group_with_comments():
    group = parse_group("# a cyclic group\n4\n(1,2,3,4)   # generator\n\n")
    assert group.degree == 4
    assert group.order() == 4


@pytest.mark.parametrize("text, line, column", [
    ("3\n(1,2)\n(1,4)\n", 3, 4),
    ("3\n(1,2)\n  (1,2\n", 3, 7),
    ("x\n(1,2)\n", 1, 1),
    ("", 1, 1),
    ('{"degree": 3,\n "generators": [(1,2)]}', 2, 17),
])
def test_parse_errors_carry_line_and_column(text, line, column):
    with pytest.raises(GroupParseError) as info:
        parse_group(text)
    assert info.value.line == line
    assert info.value.column == column


@pytest.mark.parametrize("data", [
    {"generators": ["(1,2)"]},
    {"degree": 0},
    {"degree": 3, "generators": "(1,2)"},
    {"degree": 3, "generators": [12]},
    {"degree": 3, "generators": ["(1,5)"]},
])
def test_group_dicts_are_validated(data):
    with pytest.raises(GroupParseError):
        group_from_dict(data)


def test_load_and_dump_group(tmp_path, dic3):
    path = dump_group(dic3, tmp_path / "groups" / "dic3.json", name="Dic3")
    loaded = load_group(path)
    assert loaded.name == "Dic3"
    assert loaded.order() == 12
    (tmp_path / "c5.txt").write_text("5\n(1,2,3,4,5)\n", encoding="utf-8")
    assert load_group(tmp_path / "c5.txt").name == "c5"
    with pytest.raises(GroupParseError):
        load_group(tmp_path / "missing.json")


def test_mapping_files_round_trip(tmp_path, dic3):
    copy = scramble(dic3, 6, extra_points=1).group
    hom = isomorphism_cubefree(dic3, copy)
    data = mapping_to_dict(hom, {"bijective": True})
    assert data["domain_degree"] == dic3.degree
    assert data["codomain_degree"] == copy.degree
    assert set(data["mapping"]) == {g.to_cycle_string() for g in dic3.generators}
    path = dump_mapping(hom, tmp_path / "map.json")
    reloaded = load_mapping(path, dic3, copy)
    for g in dic3.elements():
        assert reloaded(g) == hom(g)


def test_load_mapping_rejects_non_homomorphisms(tmp_path, s3):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"mapping": {"(1,2,3)": "(1,2)", "(1,2)": "(1,2)"}}), encoding="utf-8")
    with pytest.raises(VerificationError):
        load_mapping(path, s3, s3)
    path.write_text('{"mapping": [1, 2]}', encoding="utf-8")
    with pytest.raises(GroupParseError):
        load_mapping(path, s3, s3)
