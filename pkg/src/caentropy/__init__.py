"""Exact measure-theoretic and directional entropy of additive cellular automata."""
from .rules import (
    LocalRule,
    PermutativityReport,
    apply_local,
    compose_direction,
    effective_span,
    make_rule,
    parse_rule,
    permutativity,
    rule_power,
    rule_shift,
)
from .linalg import DiagonalForm, MatrixZr, diagonalize, log_image_size, log_kernel_size
from .spacetime import CellSet, ObservationCell, cells_to_matrix, dependence_hull, simulate_cone
from .entropy import (
    EntropyEstimate,
    IntervalSpec,
    closed_form_entropy,
    conditional_entropy,
    entropy_rate,
    joint_entropy,
    q_transform,
    right_left_entropies,
)
from .directional import (
    DirectionLimitReport,
    DirectionVector,
    convergents,
    directional_entropy,
    homogeneity_check,
    interval_monotonicity_suite,
    unit_length_entropy,
)

__version__ = "0.1.0"
