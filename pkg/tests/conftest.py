"""
Fixtures compartilhadas: tabelas publicadas, primo padrão e séries sintéticas.
"""
from itertools import product
from pathlib import Path
from typing import Callable, Iterable, List

import mpmath as mp
import pytest

from core.exact_count import PREDICTED, Series, SeriesEntry, generate_primes, read_series
from core.signature import EdgeState, Signature, heights

GOLDEN = Path(__file__).resolve().parent.parent / "storage" / "golden"


@pytest.fixture(scope="session")
def prime() -> int:
    return generate_primes(1)[0]


@pytest.fixture(scope="session")
def golden() -> Callable[[str], Series]:
    cache = {}

    def load(problem: str) -> Series:
        if problem not in cache:
            cache[problem] = read_series(GOLDEN / f"{problem}.series")
        return cache[problem]

    return load


@pytest.fixture
def synthetic() -> Callable[[Callable[[int], mp.mpf], Iterable[int]], Series]:
    """Série com valores de ponto flutuante marcados como previstos (erro 0)."""

    def make(fn: Callable[[int], mp.mpf], Ls: Iterable[int]) -> Series:
        series = Series("synthetic")
        with mp.workdps(60):
            for L in Ls:
                series.add(SeriesEntry(L, mp.mpf(fn(L)), PREDICTED, mp.mpf(0)))
        return series

    return make


def all_signatures(width: int, start_height: int) -> List[Signature]:
    """Todas as assinaturas válidas de uma largura, por força bruta."""
    out = []
    for states in product((EdgeState.EMPTY, EdgeState.LOWER, EdgeState.UPPER), repeat=width):
        profile = heights(states, start_height)
        if min(profile) >= 0 and profile[-1] == 0:
            out.append(Signature.from_states(states, start_height))
    return out
