"""Linear soft-margin SVM with the zero-one misclassification penalty, solved
by a working-set ADMM, plus data plumbing, tuning, benchmarks, an HTTP
service, and a command-line client."""

__version__ = "0.1.0"

from .bench import BenchRow, BenchRun, run_table1, run_table2
from .core import (
    PrimalDualPoint,
    ProxThreshold,
    StationarityResiduals,
    initial_point,
    l01_count,
    primal_objective,
    prox_l01,
    stationarity_residuals,
)
from .dataio import (
    Dataset,
    ParseError,
    ScalingMap,
    SignedDesign,
    apply_scaler,
    fit_scaler,
    format_libsvm,
    parse_libsvm,
    signed_design,
)
from .metrics import MetricsReport, accuracy, report_from_result
from .model_io import Model, ModelFormatError, format_model, model_from_result, parse_model
from .modelsel import CvReport, Grid, cross_validate, default_grid, k_fold_split
from .service import create_app
from .solver import (
    DivergenceError,
    LinearSolveError,
    SolverConfig,
    SolverResult,
    predict,
    solve,
)
from .synth import (
    FlipSpec,
    GaussianSpec,
    bayes_reference,
    flip_labels,
    gen_two_gaussians,
    gen_two_gaussians_flipped,
)

__all__ = [
    "__version__",
    "BenchRow",
    "BenchRun",
    "run_table1",
    "run_table2",
    "PrimalDualPoint",
    "ProxThreshold",
    "StationarityResiduals",
    "initial_point",
    "l01_count",
    "primal_objective",
    "prox_l01",
    "stationarity_residuals",
    "Dataset",
    "ParseError",
    "ScalingMap",
    "SignedDesign",
    "apply_scaler",
    "fit_scaler",
    "format_libsvm",
    "parse_libsvm",
    "signed_design",
    "MetricsReport",
    "accuracy",
    "report_from_result",
    "Model",
    "ModelFormatError",
    "format_model",
    "model_from_result",
    "parse_model",
    "CvReport",
    "Grid",
    "cross_validate",
    "default_grid",
    "k_fold_split",
    "create_app",
    "DivergenceError",
    "LinearSolveError",
    "SolverConfig",
    "SolverResult",
    "predict",
    "solve",
    "FlipSpec",
    "GaussianSpec",
    "bayes_reference",
    "flip_labels",
    "gen_two_gaussians",
    "gen_two_gaussians_flipped",
]
