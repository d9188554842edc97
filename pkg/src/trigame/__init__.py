"""Simulator and analysis library for a three-option pair-offer balancing game.

Nature offers one of three food pairs at random; the player eats one item of
the offered pair according to fixed conditional probabilities. A strategy is
optimal for an offer-frequency triple when all three long-run consumption
rates equal 1/3. The library maps strategies to the frequency triples they
are optimal for, decides the reverse (which strategy sets can serve a given
triple), classifies pairwise-preference structure, and measures the areas of
the resulting regions on the frequency simplex for three strategy sets: the
classical probability cube, the pure-strategy unit sphere, and the
mixed-strategy unit ball.
"""

from ._kernels import BACKEND, forward_map, oracle_sweep
from .atlas import (
    AreaReport,
    DiscrepancyReport,
    SimplexGrid,
    cross_validate,
    measure_forward,
    measure_oracle,
)
from .feasibility import (
    FILTER_ANY,
    FILTER_INTRANSITIVE_ANY,
    FILTER_INTRANSITIVE_I,
    FILTER_INTRANSITIVE_II,
    FILTER_TRANSITIVE_ANY,
    FILTERS,
    MODEL_CLASSICAL,
    MODEL_QUANTUM_MIXED,
    MODEL_QUANTUM_PURE,
    MODELS,
    FeasibilityResult,
    brute_force_feasible,
    feasible,
)
from .game import (
    BOUNDARY,
    INTRANSITIVE_I,
    INTRANSITIVE_II,
    STATUS_OK,
    STATUS_OUT_OF_SIMPLEX,
    STATUS_SINGULAR,
    TRANSITIVE,
    Classification,
    ConditionalProbs,
    Consumption,
    MapResult,
    classification_from_code,
    classify,
    consumption,
    is_optimal,
    optimal_frequencies,
)
from .geometry import (
    INFINITY,
    BallPoint,
    CubePoint,
    Frequencies,
    Rng,
    SpherePoint,
    sample_ball,
    sample_cube,
    sample_sphere,
    simplex_to_cartesian,
    sphere_to_stereographic,
    stereographic_to_sphere,
)
from .quantum import (
    HADAMARD,
    PHASE_HADAMARD,
    MixedDecomposition,
    basis_matrix,
    decompose_mixed,
    express_in_basis,
    probs_from_sphere,
    probs_from_z,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BACKEND",
    # geometry
    "INFINITY",
    "SpherePoint",
    "BallPoint",
    "CubePoint",
    "Frequencies",
    "Rng",
    "stereographic_to_sphere",
    "sphere_to_stereographic",
    "sample_sphere",
    "sample_ball",
    "sample_cube",
    "simplex_to_cartesian",
    # game
    "ConditionalProbs",
    "Consumption",
    "Classification",
    "MapResult",
    "consumption",
    "is_optimal",
    "optimal_frequencies",
    "classify",
    "classification_from_code",
    "TRANSITIVE",
    "INTRANSITIVE_I",
    "INTRANSITIVE_II",
    "BOUNDARY",
    "STATUS_OK",
    "STATUS_SINGULAR",
    "STATUS_OUT_OF_SIMPLEX",
    # quantum
    "HADAMARD",
    "PHASE_HADAMARD",
    "basis_matrix",
    "express_in_basis",
    "probs_from_z",
    "probs_from_sphere",
    "MixedDecomposition",
    "decompose_mixed",
    # feasibility
    "MODELS",
    "MODEL_CLASSICAL",
    "MODEL_QUANTUM_PURE",
    "MODEL_QUANTUM_MIXED",
    "FILTERS",
    "FILTER_ANY",
    "FILTER_INTRANSITIVE_I",
    "FILTER_INTRANSITIVE_II",
    "FILTER_INTRANSITIVE_ANY",
    "FILTER_TRANSITIVE_ANY",
    "FeasibilityResult",
    "feasible",
    "brute_force_feasible",
    # atlas
    "SimplexGrid",
    "AreaReport",
    "DiscrepancyReport",
    "measure_oracle",
    "measure_forward",
    "cross_validate",
    # kernels
    "forward_map",
    "oracle_sweep",
]
