from .settings import (
    MAX_WIDTH,
    PRIME_CEILING,
    DEFAULT_PRIME_COUNT,
    WORKERS,
    MEMORY_BUDGET_MB,
    MOVE_CHUNK,
    LAMBDA_SQUARE,
    LAMBDA_HEX,
    BOUND_SAFETY_TERMS,
    STORAGE_DIR,
    GOLDEN_DIR,
    SERIES_DIR,
    RESIDUE_DIR,
    MP_DPS,
    FIT_WINDOW_EXTRA,
    DEFAULT_FIT_POWERS,
    TRIM_FRACTION,
    DEFECTIVE_FACTOR,
    MIN_APPROXIMANTS,
    PREDICTION_CUTOFF,
    M2_PREDICTED_CAP,
    RATIO_PREDICTED_CAP,
    DEGREE_SPREAD,
    PREDICTION_ORDER,
    DFS_BUDGET,
    LOG_LEVEL,
    LOG_FILE,
    LOG_FORMAT
)

__all__ = [
    "MAX_WIDTH",
    "PRIME_CEILING",
    "DEFAULT_PRIME_COUNT",
    "WORKERS",
    "MEMORY_BUDGET_MB",
    "MOVE_CHUNK",
    "LAMBDA_SQUARE",
    "LAMBDA_HEX",
    "BOUND_SAFETY_TERMS",
    "STORAGE_DIR",
    "GOLDEN_DIR",
    "SERIES_DIR",
    "RESIDUE_DIR",
    "MP_DPS",
    "FIT_WINDOW_EXTRA",
    "DEFAULT_FIT_POWERS",
    "TRIM_FRACTION",
    "DEFECTIVE_FACTOR",
    "MIN_APPROXIMANTS",
    "PREDICTION_CUTOFF",
    "M2_PREDICTED_CAP",
    "RATIO_PREDICTED_CAP",
    "DEGREE_SPREAD",
    "PREDICTION_ORDER",
    "DFS_BUDGET",
    "LOG_LEVEL",
    "LOG_FILE",
    "LOG_FORMAT"
]
