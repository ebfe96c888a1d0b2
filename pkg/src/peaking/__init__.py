"""Peaking learning curves of supervised and semi-supervised least squares
classifiers on two-Gaussian problems and real datasets."""

from .approximation import (
    GammaSpec,
    approx_error,
    approx_error_fullrank,
    approx_error_pinv,
    approx_error_semisup,
    learning_curve_approx,
)
from .classifiers import (
    LinearClassifier,
    ScatterStats,
    fit_fisher_total,
    fit_fisher_within,
    fit_fixed_rank,
    fit_infinite_unlabeled,
    fit_ls_semisupervised,
    fit_ls_supervised,
    predict,
    scatter_stats,
)
from .data import (
    GaussianProblem,
    LabeledDataset,
    UnlabeledDataset,
    bootstrap_sample,
    load_csv_dataset,
    rng_stream,
    sample_labeled,
    sample_unlabeled,
)
from .estimators import (
    FisherDiscriminant,
    InfiniteUnlabeledClassifier,
    LeastSquaresClassifier,
    SemiSupervisedLeastSquaresClassifier,
    VariancePCA,
)
from .evaluation import ErrorEstimate, analytic_error, empirical_error
from .experiments import (
    CurvePoint,
    LearningCurve,
    run_approximation,
    run_benchmark,
    run_contributions,
    run_infinite_unlabeled,
    run_synthetic_curves,
)
from .numerics import normal_cdf, pca_fit, pca_transform, pseudo_inverse, truncated_pseudo_inverse

__version__ = "0.1.0"
