"""
Simple groups PSL_2(p) and A_5
"""

from typing import Any, Dict

from cubefree.core.iso import standard_psl2
from cubefree.utils.groupfile import group_to_dict


class PSL2Generator:
    """PSL_2(p) on the p + 1 points of the projective line"""

    @staticmethod
    def generate(params: Dict[str, Any]) -> Dict[str, Any]:
        """
        Parameters:
            p: int - Prime >= 5
        """
        p = params.get('p', 5)
        return group_to_dict(standard_psl2(p), name=f"PSL2({p})")


class AlternatingGroupGenerator:
    """A_n on n points, generated by a 3-cycle and an (n-1)- or n-cycle"""

    @staticmethod
    def generate(params: Dict[str, Any]) -> Dict[str, Any]:
        """
        Parameters:
            n: int - Degree (n >= 3)
        """
        n = params.get('n', 5)
        if n % 2:
            long_cycle = "(" + ",".join(str(i) for i in range(1, n + 1)) + ")"
        else:
            long_cycle = "(" + ",".join(str(i) for i in range(2, n + 1)) + ")"
        return {"degree": n, "generators": ["(1,2,3)", long_cycle], "name": f"A{n}"}
