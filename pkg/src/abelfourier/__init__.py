"""Fourier analysis on finite abelian groups: exact transforms under matched
Haar measures, L^p quasi-norms and the (p, q) operator-norm region geometry,
extremal witness families, numerical norm estimation, and entropic
uncertainty principles.
"""

from .groups import (
    COMPACT,
    DISCRETE,
    EXHAUSTIVE_CAP,
    CapacityError,
    GroupSpec,
    Subgroup,
    all_subgroups,
)
from .transform import (
    FREQUENCY,
    TIME,
    MeasuredFunction,
    SideError,
    character_function,
    delta,
    dft_matrix,
    double_transform,
    dual_forward,
    forward,
    inverse,
    l2_norm,
    parseval_defect,
    read_csv,
    reflect,
    write_csv,
)
from .norms import (
    INF,
    Exponent,
    RegionVerdict,
    classify,
    closed_form_cpq,
    exponent_value,
    hausdorff_young_check,
    holder_conjugate,
    lp_norm,
    recip,
)
from .witnesses import (
    CltWitness,
    GrowthFit,
    LacunaryDiscreteWitness,
    TrigPolynomial,
    WitnessPoint,
    arc_indicator_witness,
    chirp_witness,
    clt_delta_witness,
    fit_growth,
    full_orbit_witness,
    lacunary_coefficients,
    lacunary_compact_witness,
    lacunary_discrete_witness,
    subgroup_indicator_witness,
)
from .estimator import (
    EstimatorConfig,
    NormEstimate,
    ascent_estimate,
    estimate_norm,
    log_convexity_check,
    ratio,
    structured_search,
)
from .uncertainty import (
    Density,
    UPReport,
    ViolatorResult,
    donoho_stark_check,
    renyi_entropy,
    support_product,
    unweighted_up_margin,
    weighted_entropy_sum,
    weighted_up_margin,
    weighted_up_violator,
)

__version__ = "0.1.0"
