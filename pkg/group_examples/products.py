"""
Direct products and the desk-scale benchmark group
"""

from typing import Any, Dict, List

from group_examples.dihedral import DicyclicGroupGenerator
from group_examples.cyclic import CyclicGroupGenerator
from group_examples.semidirect import MetacyclicGenerator
from cubefree.core.perm import Permutation, PermGroup
from cubefree.utils.groupfile import group_from_dict, group_to_dict


def direct_product(groups: List[PermGroup]) -> PermGroup:
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for h in g.generators:
            gens.append(Permutation.identity(offset).direct_sum(h).extend(degree))
        offset += g.degree
    order = 1
    for g in groups:
        order *= g.order()
    return PermGroup(gens, degree, order_hint=order)


class DirectProductGenerator:
    """Direct product of groups given as group-file dicts, on the disjoint union of their points"""

    @staticmethod
    def generate(params: Dict[str, Any]) -> Dict[str, Any]:
        """
        Parameters:
            factors: list of dict - Group-file dicts of the factors
        """
        factors = [group_from_dict(f) for f in params.get('factors', [])]
        if not factors:
            return {"degree": 1, "generators": [], "name": "1"}
        name = " × ".join(f.get("name", "?") for f in params['factors'])
        return group_to_dict(direct_product(factors), name=params.get('name', name))


class DeskScaleGenerator:
    """
    Dic3 × (C5^2 ⋊ C3) × C49, order 44100 = 2^2·3^2·5^2·7^2

    Every prime appears squared; the Frattini subgroup has order 14 and the
    C3 acts irreducibly on C5^2.
    """

    ORDER = 44100

    @staticmethod
    def generate(params: Dict[str, Any]) -> Dict[str, Any]:
        factors = [
            DicyclicGroupGenerator.generate({'n': 3}),
            MetacyclicGenerator.generate({'m': 3, 'p': 5, 'exponent': 2, 'elementary': True,
                                          'action': [[0, 1], [4, 4]]}),
            CyclicGroupGenerator.generate({'n': 49}),
        ]
        return DirectProductGenerator.generate({'factors': factors, 'name': "Dic3 × (C5^2⋊C3) × C49"})
