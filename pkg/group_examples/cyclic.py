"""
Cyclic and abelian groups as products of disjoint cycles
"""

from typing import Any, Dict, List

from sympy import factorint


def _cycle(start: int, length: int) -> str:
    if length == 1:
        return "()"
    return "(" + ",".join(str(start + i + 1) for i in range(length)) + ")"


class CyclicGroupGenerator:
    """C_n, either on n points or on the sum of its prime-power parts"""

    @staticmethod
    def generate(params: Dict[str, Any]) -> Dict[str, Any]:
        """
        Generate a group-file dict

        Parameters:
            n: int - Group order
            split: bool - One cycle per prime power instead of a single n-cycle
        """
        n = params.get('n', 6)
        split = params.get('split', False)
        if not split or n == 1:
            return {"degree": max(n, 1), "generators": [_cycle(0, n)], "name": f"C{n}"}
        cycles = []
        offset = 0
        for p, e in sorted(factorint(n).items()):
            cycles.append(_cycle(offset, p ** e))
            offset += p ** e
        return {"degree": offset, "generators": ["".join(cycles)], "name": f"C{n}"}


class AbelianGroupGenerator:
    """C_{n_1} × ... × C_{n_k} with one cycle per factor"""

    @staticmethod
    def generate(params: Dict[str, Any]) -> Dict[str, Any]:
        """
        Parameters:
            invariants: list of int - Cyclic factor orders
        """
        invariants: List[int] = params.get('invariants', [2, 2])
        gens = []
        offset = 0
        for n in invariants:
            if n > 1:
                gens.append(_cycle(offset, n))
            offset += n
        name = " × ".join(f"C{n}" for n in invariants)
        return {"degree": max(offset, 1), "generators": gens, "name": name}
