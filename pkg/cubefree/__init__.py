"""
Cube-free group isomorphism engine
Permutation-group toolkit that decides isomorphism of groups of cube-free order
"""

__version__ = "1.0.0"
__author__ = "cubefree-iso"

from cubefree.core.perm import Permutation, PermGroup, parse_permutation
from cubefree.core.iso import isomorphism_cubefree

__all__ = ["Permutation", "PermGroup", "parse_permutation", "isomorphism_cubefree"]
