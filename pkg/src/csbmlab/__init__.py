"""csbmlab: mixing/denoising analysis of graph convolutions on the
two-class contextual stochastic block model."""

from .csbm import (
    CsbmParams,
    Features,
    Graph,
    RegimeReport,
    check_regime,
    expected_operator_spectrum,
    sample_features,
    sample_graph,
    sample_instance,
)
from .depth import DepthPrediction, predict_depth
from .empirics import (
    ClassStats,
    MomentCurves,
    Split,
    SweepRow,
    VerificationReport,
    class_stats,
    counterexample_search,
    layerwise_sweep,
    make_split,
    monte_carlo_moments,
    population_accuracy,
    threshold_accuracy,
    verify,
)
from .io import GraphFormatError, load_graph
from .propagation import (
    DegenerateGraphError,
    NodeRepresentations,
    OperatorSpec,
    ResourceLimitError,
    VarianceProfile,
    appnp_step,
    exact_variance_profile,
    ppnp,
    propagate,
    rw_step,
    sym_step,
)
from .theory import (
    ConcentrationConfig,
    TheoryBounds,
    appnp_mean_gap,
    appnp_variance_bounds,
    bayes_error,
    depth_scale,
    mean_gap,
    mean_gap_error,
    neighborhood_bound,
    ppnp_mean_gap,
    ppnp_variance_bounds,
    shell_bound,
    theory_bounds,
    variance_bound_fixed_horizon,
    variance_bounds,
    variance_limit,
    zscore_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "CsbmParams",
    "Features",
    "Graph",
    "RegimeReport",
    "check_regime",
    "expected_operator_spectrum",
    "sample_features",
    "sample_graph",
    "sample_instance",
    "DepthPrediction",
    "predict_depth",
    "ClassStats",
    "MomentCurves",
    "Split",
    "SweepRow",
    "VerificationReport",
    "class_stats",
    "counterexample_search",
    "layerwise_sweep",
    "make_split",
    "monte_carlo_moments",
    "population_accuracy",
    "threshold_accuracy",
    "verify",
    "GraphFormatError",
    "load_graph",
    "DegenerateGraphError",
    "NodeRepresentations",
    "OperatorSpec",
    "ResourceLimitError",
    "VarianceProfile",
    "appnp_step",
    "exact_variance_profile",
    "ppnp",
    "propagate",
    "rw_step",
    "sym_step",
    "ConcentrationConfig",
    "TheoryBounds",
    "appnp_mean_gap",
    "appnp_variance_bounds",
    "bayes_error",
    "depth_scale",
    "mean_gap",
    "mean_gap_error",
    "neighborhood_bound",
    "ppnp_mean_gap",
    "ppnp_variance_bounds",
    "shell_bound",
    "theory_bounds",
    "variance_bound_fixed_horizon",
    "variance_bounds",
    "variance_limit",
    "zscore_bounds",
    "__version__",
]
