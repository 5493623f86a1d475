"""Generalized variation of sampled real functions."""

from .decomp import (
    DecompositionPair,
    check_bass,
    check_ineq_902,
    check_ineq_980,
    check_majorant_sandwich,
    jordan_decompose,
    monotone_majorant,
    power_majorant,
    regularized_phi,
)
from .dvar import (
    d_bound_check,
    d_decompose,
    d_envelope,
    d_monotone_part,
    d_variation_on_partition,
    d_variation_profile,
    is_d_periodically_increasing,
    optimal_d_partition,
    total_d_variation,
)
from .errors import GenvarError, PreconditionError, ValidationError
from .funcspace import (
    PartitionIndexSet,
    SampledFunction,
    corpus,
    make_sampled,
    pointwise_product,
    power_phi,
    sup_norm,
)
from .reports import CheckReport
from .rvar import (
    ErrorFunctionTable,
    VariationProfile,
    check_holder,
    check_phi_concave,
    check_phi_monotone,
    check_phi_subadditive,
    concave_majorant,
    optimal_r_partition,
    phi_from_variation,
    r_variation_on_partition,
    r_variation_profile,
    superadditivity_gap,
    total_r_variation,
)

__version__ = "0.1.0"
