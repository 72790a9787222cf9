"""
boolmeas

Exact computations linking finitely additive measures on Boolean algebras
with homomorphisms into the measure algebra, modelled at desk scale by
clopen sets of [0,1) with rational endpoints.

Design principles:
- Everything is exact: Fractions throughout, floats rejected at the boundary
- Elements are canonical immutable values with Boolean operators
- Every enumeration has an explicit cap; exceeding it raises CapExceededError
- Randomness only through explicitly seeded numpy generators
"""

from __future__ import annotations

__version__ = "0.1.0"

# ---------------------------------------------------------------------------
# Errors and configuration
# ---------------------------------------------------------------------------
from .errors import BoolMeasError, CapExceededError, ForeignElementError, ValidationError
from .models.run_config import RunConfig, get_preset_config

# ---------------------------------------------------------------------------
# Interval model and algebras
# ---------------------------------------------------------------------------
from .core.interval_model import (
    ClopenSet,
    DyadicCylinder,
    bit_flip,
    combine,
    fn_distance,
    lambda_measure,
    normalize,
    shift_preimage,
    shifted_mass,
)
from .core.algebras import (
    AtomSet,
    CantorAlgebra,
    CantorClopen,
    Chunk,
    FiniteCofinite,
    FiniteCofiniteAlgebra,
    FiniteSetAlgebra,
    cantor_to_interval,
    element_ops,
    enumerate_chunks,
    sikorski_check,
)

# ---------------------------------------------------------------------------
# Measures, names, Kelley numbers, dynamics and convergence
# ---------------------------------------------------------------------------
from .core.measures import (
    Measure,
    atomless_partition,
    epsilon_net_profile,
    epsilon_net_size,
    evaluate_measure,
    is_strictly_positive,
    measure_from_centering,
)
from .core.names import (
    Homomorphism,
    SamplePoint,
    antichain_ladder,
    evaluate_hom,
    induced_measure,
    metric_embedding,
    name_at_point,
    purely_atomic_antichain,
)
from .core.kelley import KelleyInstance, intersection_number_bruteforce, kelley_lp, supports_decision
from .core.dynamics import (
    CenteringSequence,
    centering_cover_report,
    centering_witness,
    mixing_table,
    swap_automorphism,
    symmetry_check,
)
from .core.convergence import (
    HomSequence,
    nontriviality_verdict,
    pointwise_report,
    sequence_member,
    uniform_defect,
)
from .extras.density import density_demo
from .utils import save_report

__all__ = [
    "__version__",
    "BoolMeasError",
    "CapExceededError",
    "ForeignElementError",
    "ValidationError",
    "RunConfig",
    "get_preset_config",
    "ClopenSet",
    "DyadicCylinder",
    "bit_flip",
    "combine",
    "fn_distance",
    "lambda_measure",
    "normalize",
    "shift_preimage",
    "shifted_mass",
    "AtomSet",
    "CantorAlgebra",
    "CantorClopen",
    "Chunk",
    "FiniteCofinite",
    "FiniteCofiniteAlgebra",
    "FiniteSetAlgebra",
    "cantor_to_interval",
    "element_ops",
    "enumerate_chunks",
    "sikorski_check",
    "Measure",
    "atomless_partition",
    "epsilon_net_profile",
    "epsilon_net_size",
    "evaluate_measure",
    "is_strictly_positive",
    "measure_from_centering",
    "Homomorphism",
    "SamplePoint",
    "antichain_ladder",
    "evaluate_hom",
    "induced_measure",
    "metric_embedding",
    "name_at_point",
    "purely_atomic_antichain",
    "KelleyInstance",
    "intersection_number_bruteforce",
    "kelley_lp",
    "supports_decision",
    "CenteringSequence",
    "centering_cover_report",
    "centering_witness",
    "mixing_table",
    "swap_automorphism",
    "symmetry_check",
    "HomSequence",
    "nontriviality_verdict",
    "pointwise_report",
    "sequence_member",
    "uniform_defect",
    "density_demo",
    "save_report",
]
