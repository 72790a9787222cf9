"""
Run Configuration Model

RunConfig holds the settings shared by every command: the seed, the
output format, and the enumeration caps of the exact algorithms.

WHAT BELONGS HERE:
------------------
✓ Seed and the density bit count
✓ Output format
✓ Enumeration caps the commands honour (brute force, Kelley sizes,
  shift materialization, centering witnesses, sample point digits)

WHAT DOES NOT BELONG HERE:
---------------------------
✗ Problem instances (atoms, families, homomorphisms -> command input JSON)

Resolution order in the CLI: preset -> --config YAML -> explicit flags.
"""

from dataclasses import asdict, dataclass
from typing import Any, Dict

import yaml

OUTPUT_FORMATS = ("table", "csv", "json")


@dataclass
class RunConfig:
    """
    Settings for one boolmeas run.

    Example:
    --------
    >>> config = RunConfig(seed=7, output_format="csv")
    >>> config.multiset_cap
    12
    """

    # ========== Metadata ==========
    version: str = "1.0"
    description: str = ""

    # ========== Reproducibility ==========
    seed: int = 0
    output_format: str = "table"

    # ========== Kelley ==========
    multiset_cap: int = 12           # brute-force multiset size N
    kelley_max_atoms: int = 20
    kelley_max_family: int = 20

    # ========== Dynamics ==========
    shift_piece_limit: int = 1 << 20  # pieces shift_preimage may materialize
    witness_cap: int = 64             # largest n tried by centering_witness

    # ========== Sampling ==========
    point_bit_cap: int = 256         # digits a seeded sample point may draw to settle membership
    density_bits: int = 10_000

    def __post_init__(self):
        """Validate"""
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"Unknown output format: {self.output_format}. "
                             f"Available: {list(OUTPUT_FORMATS)}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed!r}")
        if not 1 <= self.multiset_cap <= 12:
            raise ValueError(f"multiset_cap must be in [1, 12], got {self.multiset_cap}")
        for name in ("kelley_max_atoms", "kelley_max_family", "shift_piece_limit", "witness_cap",
                     "point_bit_cap", "density_bits"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return asdict(self)

    def to_yaml(self, filepath: str):
        """Save configuration to YAML file"""
        with open(filepath, 'w') as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False, sort_keys=False)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunConfig':
        """Create RunConfig from dictionary; unknown keys are ignored"""
        import inspect
        sig = inspect.signature(cls)
        valid_keys = set(sig.parameters.keys())
        filtered_data = {k: v for k, v in (data or {}).items() if k in valid_keys}
        return cls(**filtered_data)

    @classmethod
    def from_yaml(cls, filepath: str) -> 'RunConfig':
        """Load configuration from YAML file"""
        with open(filepath, 'r') as f:
            data = yaml.safe_load(f)
        return cls.from_dict(data)

    def copy(self) -> 'RunConfig':
        """Create a copy of this configuration"""
        return RunConfig.from_dict(self.to_dict())

    def update(self, **kwargs):
        """Update configuration parameters; None values are skipped"""
        for key, value in kwargs.items():
            if value is not None and hasattr(self, key):
                setattr(self, key, value)
        self.__post_init__()


# ========== Preset Configurations ==========

PRESET_CONFIGS = {
    'default': RunConfig(),

    'quick': RunConfig(
        description="small caps for smoke runs",
        multiset_cap=8,
        shift_piece_limit=1 << 14,
        witness_cap=32,
        point_bit_cap=64,
        density_bits=1_000,
    ),

    'exhaustive': RunConfig(
        description="large search budgets",
        shift_piece_limit=1 << 24,
        witness_cap=256,
        point_bit_cap=4096,
        density_bits=100_000,
    ),
}


def get_preset_config(preset_name: str) -> RunConfig:
    """
    Get a predefined configuration.

    Args:
        preset_name: One of 'default', 'quick', 'exhaustive'

    Returns:
        RunConfig object

    Example:
        >>> config = get_preset_config('quick')
        >>> config.seed = 42  # Customize as needed
    """
    if preset_name not in PRESET_CONFIGS:
        raise ValueError(f"Unknown preset: {preset_name}. "
                         f"Available: {list(PRESET_CONFIGS.keys())}")

    return PRESET_CONFIGS[preset_name].copy()
