"""
Núcleo da enumeração: assinaturas, hash perfeito, matriz de transferência
e contagem exata.
"""
from .problems import PROBLEMS, ProblemSpec, get_problem
from .signature import Signature
from .perfect_hash import HashFunction, build_hash
from .tm_engine import TransferMatrix, audited_sweep, reference_sweep, sweep
from .exact_count import Series, SeriesEntry, enumerate_exact, read_series, write_series
from .oracle import dfs_count

__all__ = [
    "PROBLEMS",
    "ProblemSpec",
    "get_problem",
    "Signature",
    "HashFunction",
    "build_hash",
    "TransferMatrix",
    "audited_sweep",
    "reference_sweep",
    "sweep",
    "Series",
    "SeriesEntry",
    "enumerate_exact",
    "read_series",
    "write_series",
    "dfs_count",
]
