"""Exact-arithmetic tropical cohomology and Chow rings of simplicial fans."""

from .fan import ConewiseLinear, Fan, TropicalWeights, is_balanced, is_saturated, is_saturated_at, is_unimodular, validate
from .matroid import Matroid, bergman_fan
from .compactify import Compactification, comp_faces
from .homology import Chain, Cochain, build_complex, cap, cubical_complex, cup, fine_double_complex, fundamental_cycle, groups
from .chow import (
    ChowClass,
    MinkowskiWeight,
    chow_generator_cocycle,
    chow_group,
    chow_multiply,
    chow_mw_pairing,
    cocycle_to_chow,
    cycle_class,
    degree_map,
    minkowski_weights,
)
from .criteria import chow_pd_check, homology_manifold_check, is_ample, kleiman_check, pd_weight, verification_report
from .zlinalg import AbGroup, IntMatrix, Sublattice, cokernel_group, kernel_basis, saturate, snf, strict_lp_feasible

__version__ = "0.1.0"
