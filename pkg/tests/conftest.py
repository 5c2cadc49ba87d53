"""
Shared fixtures: standard groups built from the group_examples families
"""

import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from cubefree.core.config import EngineConfig, set_config
from cubefree.core.perm import PermGroup, parse_permutation
from cubefree.utils.groupfile import group_from_dict
from group_examples import (AbelianGroupGenerator, AlternatingGroupGenerator, CyclicGroupGenerator,
                            DicyclicGroupGenerator, DihedralGroupGenerator, PSL2Generator, SquarefreeGenerator)


def perm_group(gens, degree, name=None) -> PermGroup:
    return PermGroup([parse_permutation(g, degree) for g in gens], degree, name=name)


@pytest.fixture(autouse=True)
def engine_config(tmp_path):
    """Fresh configuration per test, writing only below tmp_path"""
    cfg = EngineConfig(output_dir=tmp_path / "output", catalog_dir=tmp_path / "catalog",
                       log_dir=tmp_path / "logs")
    set_config(cfg)
    yield cfg
    set_config(EngineConfig())


@pytest.fixture
def s3():
    return perm_group(["(1,2,3)", "(1,2)"], 3, "S3")


@pytest.fixture
def s4():
    return perm_group(["(1,2,3,4)", "(1,2)"], 4, "S4")


@pytest.fixture
def a4():
    return group_from_dict(AlternatingGroupGenerator.generate({'n': 4}))


@pytest.fixture
def a5():
    return group_from_dict(AlternatingGroupGenerator.generate({'n': 5}))


@pytest.fixture
def psl2_5():
    return group_from_dict(PSL2Generator.generate({'p': 5}))


@pytest.fixture
def c6():
    return group_from_dict(CyclicGroupGenerator.generate({'n': 6}))


@pytest.fixture
def c12():
    return group_from_dict(CyclicGroupGenerator.generate({'n': 12}))


@pytest.fixture
def dic3():
    return group_from_dict(DicyclicGroupGenerator.generate({'n': 3}))


@pytest.fixture
def d12():
    return group_from_dict(DihedralGroupGenerator.generate({'n': 6}))


@pytest.fixture
def c2xc6():
    return group_from_dict(AbelianGroupGenerator.generate({'invariants': [2, 6]}))


@pytest.fixture
def groups_of_order_12(c12, c2xc6, a4, d12, dic3):
    """The five groups of order 12, pairwise non-isomorphic"""
    return [c12, c2xc6, a4, d12, dic3]


@pytest.fixture
def frobenius_21():
    return group_from_dict(SquarefreeGenerator.generate({'a': 3, 'b': 7, 'action': {7: 2}}))
