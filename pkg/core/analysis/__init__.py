"""
Análise de séries: razões, ajustes assintóticos, Padé e aproximantes
diferenciais.
"""
from .ratio import RatioEstimators, ratio_estimators, ratio_series
from .fits import (
    FitResult,
    ParityRatios,
    TripleFit,
    m1_lambda,
    m2_ratio_of_ratios,
    p1_subdominant,
    p2_triple_fit,
    parity_adjusted_ratios,
    sliding_fit,
)
from .pade import PadeApproximant, pade, pade_table
from .differential import DiffApprox, Singularity, fit_biased_da, fit_da, singularities
from .scan import approximant_schedule, biased_exponent_scan, da_batch, scan_crossing
from .prediction import Prediction, extend_series, predict_coefficients

__all__ = [
    "RatioEstimators",
    "ratio_estimators",
    "ratio_series",
    "FitResult",
    "ParityRatios",
    "TripleFit",
    "m1_lambda",
    "m2_ratio_of_ratios",
    "p1_subdominant",
    "p2_triple_fit",
    "parity_adjusted_ratios",
    "sliding_fit",
    "PadeApproximant",
    "pade",
    "pade_table",
    "DiffApprox",
    "Singularity",
    "fit_biased_da",
    "fit_da",
    "singularities",
    "approximant_schedule",
    "biased_exponent_scan",
    "da_batch",
    "scan_crossing",
    "Prediction",
    "extend_series",
    "predict_coefficients",
]
