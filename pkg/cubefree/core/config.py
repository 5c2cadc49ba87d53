"""
Engine configuration settings
"""

from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Dict, Any, Optional

from cubefree.core.errors import PreconditionError


@dataclass
class EngineConfig:
    """Global engine configuration"""

    # Coset actions
    index_cap: int = 100_000
    regular_quotient_limit: int = 512

    # Exhaustive fallbacks and the brute-force oracle
    oracle_limit: int = 2000
    sylow_exhaustive_bound: int = 10**6
    lattice_bound: int = 2000

    # Verification
    verify_order_bound: int = 5000
    always_verify: bool = False

    # Randomness
    random_seed: int = 1
    sylow_random_tries: int = 200

    # Modular arithmetic
    discrete_log_bound: int = 10**8

    # Largest group order accepted by the CLI (None = unbounded)
    max_order: Optional[int] = None

    # Paths
    project_root: Path = field(default_factory=lambda: Path(__file__).parent.parent.parent)
    log_dir: Path = field(default_factory=lambda: Path(__file__).parent.parent.parent / "logs")
    catalog_dir: Path = field(default_factory=lambda: Path(__file__).parent.parent.parent / "catalog")
    output_dir: Path = field(default_factory=lambda: Path(__file__).parent.parent.parent / "output")

    def __post_init__(self):
        """Validate numeric settings"""
        for name in ("index_cap", "regular_quotient_limit", "oracle_limit", "sylow_exhaustive_bound",
                     "lattice_bound", "verify_order_bound",
                     "sylow_random_tries", "discrete_log_bound"):
            if getattr(self, name) < 1:
                raise PreconditionError(f"{name} must be positive, got {getattr(self, name)}")
        if self.regular_quotient_limit > self.index_cap:
            raise PreconditionError("regular_quotient_limit cannot exceed index_cap")
        if self.max_order is not None and self.max_order < 1:
            raise PreconditionError("max_order must be positive")
        for name in ("project_root", "log_dir", "catalog_dir", "output_dir"):
            setattr(self, name, Path(getattr(self, name)))

    def to_dict(self) -> Dict[str, Any]:
        """Convert config to dictionary"""
        data = {}
        for f in fields(self):
            value = getattr(self, f.name)
            data[f.name] = str(value) if isinstance(value, Path) else value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EngineConfig":
        """Create config from dictionary"""
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})

    def replace(self, **changes) -> "EngineConfig":
        data = self.to_dict()
        data.update(changes)
        return EngineConfig.from_dict(data)


_config = EngineConfig()


def get_config(config: Optional[EngineConfig] = None) -> EngineConfig:
    """Return `config` if given, otherwise the process-wide configuration"""
    return config if config is not None else _config


def set_config(config: EngineConfig) -> None:
    global _config
    _config = config
