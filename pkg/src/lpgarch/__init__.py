"""Local projections with GARCH-family error models and a Monte Carlo study of their efficiency."""

from ._errors import (
    ConfigError,
    ParameterDomainError,
    PipelineOrderError,
    SingularityError,
    SpecificationError,
)
from .benchmark import TrueModelFit, fit_true_model, irf_ar
from .dgp import DgpParams, SeriesSample, simulate_series
from .garch import (
    ExogTerms,
    FitResult,
    OptimizerConfig,
    VarianceKind,
    VarianceSpec,
    fit_mle,
    from_unconstrained,
    gaussian_neg_loglik,
    ols_fit,
    to_unconstrained,
    variance_path,
)
from .montecarlo import (
    TRUTH,
    Cell,
    McConfig,
    aggregate_se,
    diff_vs_truth,
    run_grid,
    run_replication,
    se_table,
    summarize,
)
from .projections import (
    HorizonFit,
    LPModel,
    ResidualMatrix,
    build_horizon_dataset,
    estimate_all_horizons,
    har_aggregates,
)

__version__ = "0.1.0"
