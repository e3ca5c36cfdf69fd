from .errors import EntanglementError
from .state import (
    Tolerances, DEFAULT_TOLERANCES, PureState, Bipartition, make_state, random_pure,
    random_real_pure, random_local_unitary, apply_local, tensor, single_party_splits,
    all_bipartitions,
)
from .catalog import NamedState, StateKind, CATALOG_NAMES, catalog

__all__ = [
    "EntanglementError", "Tolerances", "DEFAULT_TOLERANCES", "PureState", "Bipartition",
    "make_state", "random_pure", "random_real_pure", "random_local_unitary", "apply_local",
    "tensor", "single_party_splits", "all_bipartitions",
    "NamedState", "StateKind", "CATALOG_NAMES", "catalog",
]
