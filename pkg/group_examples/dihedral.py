"""
Dihedral and dicyclic groups
"""

from typing import Any, Dict, List, Tuple


def _cycle_string(images: List[int]) -> str:
    seen = set()
    parts = []
    for start in range(len(images)):
        if start in seen or images[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        point = images[start]
        while point != start:
            cycle.append(point)
            seen.add(point)
            point = images[point]
        parts.append("(" + ",".join(str(x + 1) for x in cycle) + ")")
    return "".join(parts) or "()"


class DihedralGroupGenerator:
    """Symmetries of the regular n-gon, order 2n, on n points"""

    @staticmethod
    def generate(params: Dict[str, Any]) -> Dict[str, Any]:
        """
        Parameters:
            n: int - Number of vertices (n >= 3)
        """
        n = params.get('n', 3)
        rotation = [(i + 1) % n for i in range(n)]
        reflection = [(-i) % n for i in range(n)]
        return {
            "degree": n,
            "generators": [_cycle_string(rotation), _cycle_string(reflection)],
            "name": f"D{2 * n}",
        }


class DicyclicGroupGenerator:
    """
    Dic_n = <a, x | a^(2n), x^2 = a^n, x^-1 a x = a^-1>, order 4n, regular action

    Element a^k x^e sits on point k + 2n e.
    """

    @staticmethod
    def _multiply(left: Tuple[int, int], right: Tuple[int, int], n: int) -> Tuple[int, int]:
        k1, e1 = left
        k2, e2 = right
        m = 2 * n
        if e1 == 0:
            return (k1 + k2) % m, e2
        if e2 == 0:
            return (k1 - k2) % m, 1
        return (k1 - k2 + n) % m, 0

    @staticmethod
    def generate(params: Dict[str, Any]) -> Dict[str, Any]:
        """
        Parameters:
            n: int - Dic_n has order 4n (n = 3 gives the group of order 12)
        """
        n = params.get('n', 3)
        m = 2 * n
        elements = [(k, e) for e in (0, 1) for k in range(m)]
        index = {el: i for i, el in enumerate(elements)}
        gens = []
        for g in ((1, 0), (0, 1)):
            images = [index[DicyclicGroupGenerator._multiply(el, g, n)] for el in elements]
            gens.append(_cycle_string(images))
        return {"degree": 2 * m, "generators": gens, "name": f"Dic{n}"}
