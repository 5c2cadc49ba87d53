"""Parametric group families used by the catalog, the bench and the tests"""

from typing import Any, Dict, List

from group_examples.cyclic import AbelianGroupGenerator, CyclicGroupGenerator
from group_examples.dihedral import DicyclicGroupGenerator, DihedralGroupGenerator
from group_examples.products import DirectProductGenerator, DeskScaleGenerator
from group_examples.psl2 import AlternatingGroupGenerator, PSL2Generator
from group_examples.semidirect import MetacyclicGenerator, SquarefreeGenerator

__all__ = [
    "AbelianGroupGenerator", "CyclicGroupGenerator", "DicyclicGroupGenerator", "DihedralGroupGenerator",
    "DirectProductGenerator", "DeskScaleGenerator", "AlternatingGroupGenerator", "PSL2Generator",
    "MetacyclicGenerator", "SquarefreeGenerator", "examples_of_order",
]


def examples_of_order(n: int) -> List[Dict[str, Any]]:
    """A few group-file dicts of order n from the families above, for orders the catalog cannot reach"""
    found = [CyclicGroupGenerator.generate({"n": n})]
    if n % 2 == 0 and n >= 6:
        found.append(DihedralGroupGenerator.generate({"n": n // 2}))
    if n % 4 == 0 and n > 4:
        found.append(DicyclicGroupGenerator.generate({"n": n // 4}))
    if n == DeskScaleGenerator.ORDER:
        found.append(DeskScaleGenerator.generate({}))
    return found
