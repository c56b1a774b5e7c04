"""Expected number of distinct part sizes in a random composition of n.

Three routes to the same quantity: exact avoidance-count dynamic programming,
Monte Carlo over stopped geometric sequences, and the log2 n asymptote with
its periodic fluctuation.
"""
from ._backend import BACKEND
from .asymptotics import (
    CONSTANTS,
    BoundTriple,
    SeriesConfig,
    asymptotic_expectation,
    check_sandwich_bounds,
    eval_f,
    eval_g,
    eval_g_fourier,
    eval_h,
    fourier_coefficient,
    mean_constant_check,
    periodic_eval,
    proposition1_profile,
)
from .compositions import (
    BitString,
    Composition,
    RationalExpectation,
    ResourceCapError,
    brute_force_expectation,
    distinct_part_count,
    enumerate_compositions,
    from_bitstring,
    to_bitstring,
)
from .exact import (
    count_avoiding,
    exact_expectation,
    expectation_table,
    geometric_prefix_expectation,
    scaled_float_expectation,
)
from .sampler import (
    GeometricStream,
    estimate_expectation,
    sample_composition,
    sample_geometric,
    tau_tail_check,
    window_bounds,
)

__version__ = "0.1.0"
