"""Core group-theoretic algorithms"""
from cubefree.core.config import EngineConfig, get_config, set_config
from cubefree.core.perm import Permutation, PermGroup
from cubefree.core.homs import GroupHom, CosetQuotient

__all__ = ["EngineConfig", "get_config", "set_config", "Permutation", "PermGroup", "GroupHom", "CosetQuotient"]
