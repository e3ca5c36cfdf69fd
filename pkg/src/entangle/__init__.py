from .core import (
    Tolerances, PureState, Bipartition, NamedState, make_state, random_pure, catalog,
)
from .parser import parse_ket_expr, format_state
from .geometry import (
    state_matrix, post_measurement_vectors, wedge_norm_sq, concurrence_wedge,
    concurrence_purity, is_separable, schmidt_coefficients, polygon_check,
    three_qubit_identity_residual,
)
from .entropy import partial_trace, von_neumann_entropy, entropy_report, araki_lieb_check
from .teleport import (
    bell_basis, bell_measurement, correction_for_outcome, teleport, decoupling_check,
)

__all__ = [
    "Tolerances", "PureState", "Bipartition", "NamedState", "make_state", "random_pure", "catalog",
    "parse_ket_expr", "format_state",
    "state_matrix", "post_measurement_vectors", "wedge_norm_sq", "concurrence_wedge",
    "concurrence_purity", "is_separable", "schmidt_coefficients", "polygon_check",
    "three_qubit_identity_residual",
    "partial_trace", "von_neumann_entropy", "entropy_report", "araki_lieb_check",
    "bell_basis", "bell_measurement", "correction_for_outcome", "teleport", "decoupling_check",
]
