"""
Split extensions: square-free metacyclic groups and H ⋉ C_p^2
"""

from typing import Any, Dict, List

from cubefree.core.catalog import SylowModule, semidirect_product
from cubefree.core.oracle import squarefree_representation
from cubefree.core.perm import Permutation, PermGroup
from cubefree.utils.groupfile import group_to_dict


class SquarefreeGenerator:
    """C_a ⋉ C_b of square-free order on the sum of the primes dividing ab"""

    @staticmethod
    def generate(params: Dict[str, Any]) -> Dict[str, Any]:
        """
        Parameters:
            a: int - Order of the acting cyclic group
            b: int - Order of the normal cyclic group
            action: dict - Unit r_q mod q for each prime q | b (default trivial)
        """
        a = params.get('a', 2)
        b = params.get('b', 3)
        action = {int(q): int(r) for q, r in params.get('action', {}).items()}
        group = squarefree_representation(a, b, action)
        return group_to_dict(group, name=params.get('name', f"C{a}⋉C{b}"))


class MetacyclicGenerator:
    """
    C_m ⋉ N with N = C_{p^e} or C_p^2 and the generator of C_m acting by `action`

    `action` is a unit mod p^e for cyclic N and a 2x2 matrix (list of rows)
    for elementary N. Invalid actions give a group of the wrong order,
    which the group file does not record; callers check the order.
    """

    @staticmethod
    def generate(params: Dict[str, Any]) -> Dict[str, Any]:
        """
        Parameters:
            m: int - Order of the acting cyclic group
            p: int - Prime of the normal subgroup
            exponent: int - 1 or 2
            elementary: bool - C_p^2 instead of C_{p^2}
            action: int or list - Automorphism applied by the generator
        """
        m = params.get('m', 3)
        module = SylowModule(params.get('p', 5), params.get('exponent', 2), params.get('elementary', True))
        label = module.label_from_json(params.get('action', [[0, 1], [4, 4]]))
        if m == 1:
            top = PermGroup.trivial(1)
            labels: List = []
        else:
            top = PermGroup([Permutation([(i + 1) % m for i in range(m)])], m)
            labels = [label]
        group = semidirect_product(top, module, labels)
        return group_to_dict(group, name=params.get('name', f"C{m}⋉{module.name}"))
