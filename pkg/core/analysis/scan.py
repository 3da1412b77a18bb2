"""
Lotes de aproximantes diferenciais e a varredura de expoentes enviesados.
"""
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import mpmath as mp
import numpy as np

from config import DEFECTIVE_FACTOR, DEGREE_SPREAD, MIN_APPROXIMANTS, MP_DPS, TRIM_FRACTION
from core.errors import DefectiveApproximantError, InsufficientTermsError
from core.analysis.differential import (
    DiffApprox,
    critical_singularity,
    da_terms,
    fit_biased_da,
    fit_da,
    is_defective,
)
from utils.logger import logger

Degrees = Tuple[int, ...]


def approximant_schedule(
    n_terms: int,
    order: int = 3,
    spread: int = DEGREE_SPREAD,
    k_values: Iterable[int] = range(-1, 4),
    depth: int = 2,
    min_top_degree: int = 1,
) -> List[Tuple[Degrees, int]]:
    """
    Lote determinístico de (graus, K) quase diagonais.

    Graus N_k = N + δ, com no máximo um δ ≠ 0 em [-spread, spread];
    mantém os que usam entre n_terms - depth + 1 e n_terms coeficientes.
    Ordenado por (graus, K).
    """
    out = set()
    for K in k_values:
        for base in range(0, n_terms + 1):
            patterns = [(0,) * (order + 1)]
            for pos in range(order + 1):
                for delta in range(-spread, spread + 1):
                    if delta:
                        patterns.append(tuple(delta if i == pos else 0 for i in range(order + 1)))
            for pattern in patterns:
                degrees = tuple(base + d for d in pattern)
                if min(degrees) < 0 or degrees[order] < min_top_degree:
                    continue
                used = da_terms(order, degrees, K)
                if n_terms - depth < used <= n_terms:
                    out.add((degrees, K))
    return sorted(out)


@dataclass
class ApproximantEstimate:
    degrees: Degrees
    K: int
    z: mp.mpf
    exponent: Optional[mp.mpf]
    approximant: DiffApprox = field(repr=False)


@dataclass
class BatchSummary:
    estimates: List[ApproximantEstimate]
    rejected: int
    z_mean: Optional[float] = None
    z_std: Optional[float] = None
    exponent_mean: Optional[float] = None
    exponent_std: Optional[float] = None

    @property
    def count(self) -> int:
        return len(self.estimates)


def _stats(values: Sequence[float]) -> Tuple[Optional[float], Optional[float]]:
    if not values:
        return None, None
    arr = np.asarray(values, dtype=float)
    return float(arr.mean()), float(arr.std(ddof=1)) if len(arr) > 1 else 0.0


def trimmed(values: Sequence[float], fraction: float = TRIM_FRACTION) -> List[float]:
    """Descarta `fraction` dos valores em cada ponta."""
    ordered = sorted(values)
    cut = int(len(ordered) * fraction)
    return ordered[cut: len(ordered) - cut] if cut else ordered


def _reject_defective(estimates: List[ApproximantEstimate], factor: float) -> Tuple[List[ApproximantEstimate], int]:
    if not estimates:
        return estimates, 0
    consensus = float(np.median([float(e.z) for e in estimates]))
    kept = [e for e in estimates if not is_defective(e.approximant, consensus, factor)]
    return kept, len(estimates) - len(kept)


def da_batch(
    coefficients: Sequence,
    order: int = 3,
    schedule: Optional[Sequence[Tuple[Degrees, int]]] = None,
    near=None,
    factor: float = DEFECTIVE_FACTOR,
    trim: float = TRIM_FRACTION,
) -> BatchSummary:
    """
    Ajusta o lote de aproximantes não enviesados e resume a singularidade
    crítica (z_c e expoente). As médias são aparadas em `trim` de cada ponta;
    `estimates` guarda o lote inteiro depois da rejeição de defeituosos.
    """
    schedule = schedule or approximant_schedule(len(coefficients), order)
    if not schedule:
        raise InsufficientTermsError(f"Nenhum aproximante de ordem {order} cabe em {len(coefficients)} termos")
    estimates, failed = [], 0
    for degrees, K in sorted(schedule):
        try:
            da = fit_da(coefficients, order, degrees, K)
            if da.degenerate:
                failed += 1
                continue
            s = critical_singularity(da, near)
        except (DefectiveApproximantError, InsufficientTermsError):
            failed += 1
            continue
        if s is None or s.exponent is None:
            failed += 1
            continue
        estimates.append(ApproximantEstimate(degrees, K, mp.re(s.z), s.exponent, da))
    kept, defective = _reject_defective(estimates, factor)
    z_mean, z_std = _stats(trimmed([float(e.z) for e in kept], trim))
    g_mean, g_std = _stats(trimmed([float(e.exponent) for e in kept], trim))
    logger.info(f"📈 Lote DA M={order}: {len(kept)} aceitos, {failed + defective} descartados")
    return BatchSummary(kept, failed + defective, z_mean, z_std, g_mean, g_std)


@dataclass
class ScanPoint:
    lam: float
    mean: Optional[float]
    stderr: Optional[float]
    count: int
    reliable: bool


def biased_exponent_scan(
    ratios: Sequence,
    lam_grid: Sequence[float],
    trim: float = TRIM_FRACTION,
    order: int = 3,
    q: int = 1,
    schedule: Optional[Sequence[Tuple[Degrees, int]]] = None,
    min_approximants: int = MIN_APPROXIMANTS,
    factor: float = DEFECTIVE_FACTOR,
) -> List[ScanPoint]:
    """
    Para cada λ̂, aproximantes enviesados em ẑ = 1/λ̂² sobre a série de
    razões; média aparada e desvio padrão do expoente em ẑ.
    """
    schedule = schedule or approximant_schedule(len(ratios), order)
    points = []
    for lam in lam_grid:
        z_hat = mp.mpf(1) / (mp.mpf(lam) ** 2)
        estimates = []
        for degrees, K in sorted(schedule):
            try:
                da = fit_biased_da(ratios, order, degrees, K, mp.nstr(z_hat, MP_DPS), q)
                if da.degenerate:
                    continue
                s = critical_singularity(da, near=z_hat)
            except (DefectiveApproximantError, InsufficientTermsError, ValueError):
                continue
            if s is None or s.exponent is None:
                continue
            estimates.append(ApproximantEstimate(degrees, K, mp.re(s.z), s.exponent, da))
        kept, _ = _reject_defective(estimates, factor)
        values = trimmed([float(e.exponent) for e in kept], trim)
        mean, std = _stats(values)
        reliable = len(kept) >= min_approximants
        if not reliable:
            logger.warning(f"⚠️ λ̂={lam}: só {len(kept)} aproximantes válidos")
        points.append(ScanPoint(float(lam), mean, std, len(kept), reliable))
    return points


def scan_crossing(points: Sequence[ScanPoint], target: float = -1.0) -> Optional[float]:
    """λ̂ onde a média do expoente cruza `target` (interpolação linear)."""
    usable = [p for p in points if p.mean is not None]
    for a, b in zip(usable, usable[1:]):
        da, db = a.mean - target, b.mean - target
        if da == 0:
            return a.lam
        if da * db < 0:
            return a.lam + (b.lam - a.lam) * da / (da - db)
    if usable and usable[-1].mean == target:
        return usable[-1].lam
    return None
