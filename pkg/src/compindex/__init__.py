"""Entropy-weighted composite index evaluation with PCA and varimax factor analysis."""

__version__ = "0.1.0"

from .components import (
    ComponentModel,
    RotationResult,
    component_scores,
    composite_scores,
    correlation_matrix,
    fit_factors,
    fit_pca,
    normalized_eigenvectors,
    retain_components,
    varimax_rotate,
)
from .entropy import (
    corrected_proportions,
    entropy_weights,
    information_entropy,
    percentages,
    weights_from_normalized,
)
from .errors import CompindexError, InputError, NumericalError
from .numkit import EigenDecomposition, jacobi_eigh, matmul
from .preprocess import (
    IndicatorSpec,
    JudgmentMatrix,
    minmax_normalize,
    quantize_qualitative,
    zscore_standardize,
)
from .scoring import (
    IMPACT_5BAND,
    US_4BAND,
    GradeScale,
    ScoreCard,
    assign_grade,
    evaluate,
    rank_objects,
    weighted_total_score,
)
