"""
Extensão de séries: cada aproximante diferencial do lote continua a
sequência pela sua recorrência e a previsão é a média, sem os outliers.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

import mpmath as mp
import numpy as np

from config import MIN_APPROXIMANTS, MP_DPS, PREDICTION_CUTOFF, PREDICTION_ORDER
from core.errors import DefectiveApproximantError, InsufficientTermsError
from core.exact_count import PREDICTED, Series, SeriesEntry
from core.analysis.differential import fit_da
from core.analysis.ratio import ratio_series, to_mpf
from core.analysis.scan import approximant_schedule
from utils.logger import logger


@dataclass
class PredictedTerm:
    L: int
    value: mp.mpf
    stderr: mp.mpf
    count: int

    @property
    def relative_spread(self) -> mp.mpf:
        return abs(self.stderr / self.value) if self.value else mp.inf


@dataclass
class Prediction:
    coefficients: List[PredictedTerm] = field(default_factory=list)
    ratios: List[PredictedTerm] = field(default_factory=list)
    approximants: int = 0
    diagnostic: str = ""

    def entries(self) -> List[SeriesEntry]:
        return [SeriesEntry(t.L, t.value, PREDICTED, t.stderr) for t in self.coefficients]


def _without_outliers(values: List[mp.mpf]) -> List[mp.mpf]:
    """Remove valores a mais de 3 desvios absolutos medianos da mediana."""
    if len(values) < 3:
        return values
    arr = np.asarray([float(v) for v in values])
    median = np.median(arr)
    mad = np.median(np.abs(arr - median))
    if mad == 0:
        return [v for v, x in zip(values, arr) if x == median] or values
    return [v for v, x in zip(values, arr) if abs(x - median) <= 3 * mad]


def _mean_std(values: List[mp.mpf]) -> Tuple[mp.mpf, mp.mpf]:
    n = len(values)
    mean = mp.fsum(values) / n
    if n < 2:
        return mean, mp.mpf(0)
    var = mp.fsum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, mp.sqrt(var)


def extend_sequence(
    sequence: Sequence,
    n_extra: int,
    order: int = PREDICTION_ORDER,
    schedule=None,
    cutoff: float = PREDICTION_CUTOFF,
    min_approximants: int = MIN_APPROXIMANTS,
) -> Tuple[List[Tuple[mp.mpf, mp.mpf, int]], int, str]:
    """
    Previsões (média, desvio, aproximantes) para os próximos termos de uma
    sequência exata, parando quando o espalhamento relativo passa do corte.
    """
    exact = [Fraction(v) for v in sequence]
    schedule = schedule or approximant_schedule(len(exact), order)
    runs: List[List[mp.mpf]] = []
    with mp.workdps(MP_DPS):
        for degrees, K in sorted(schedule):
            try:
                da = fit_da(exact, len(degrees) - 1, degrees, K)
                if da.degenerate:
                    continue
                runs.append(da.extend(exact, len(exact) + n_extra)[len(exact):])
            except (DefectiveApproximantError, InsufficientTermsError):
                continue
        if len(runs) < min_approximants:
            raise InsufficientTermsError(
                f"Só {len(runs)} aproximantes válidos (mínimo {min_approximants})"
            )
        out, diagnostic = [], ""
        for i in range(n_extra):
            kept = _without_outliers([run[i] for run in runs])
            mean, std = _mean_std(kept)
            spread = abs(std / mean) if mean else mp.inf
            if spread > cutoff:
                diagnostic = f"espalhamento relativo {mp.nstr(spread, 3)} > {cutoff} no termo extra {i + 1}"
                break
            out.append((mean, std, len(kept)))
    return out, len(runs), diagnostic


def predict_coefficients(
    series: Series,
    n_extra: int,
    cutoff: float = PREDICTION_CUTOFF,
    on_ratios: bool = True,
    order: int = PREDICTION_ORDER,
    schedule=None,
    min_approximants: int = MIN_APPROXIMANTS,
) -> Prediction:
    """
    Prevê os próximos coeficientes de uma série.

    Args:
        series: Série (só os termos exatos entram nos ajustes)
        n_extra: Quantos termos prever
        cutoff: Espalhamento relativo máximo aceito
        on_ratios: Estende a série de razões e reconstrói os coeficientes
        order: Ordem M dos aproximantes
        schedule: Lote explícito de (graus, K)
        min_approximants: Mínimo de aproximantes válidos

    Returns:
        Prediction com coeficientes previstos (e razões, se on_ratios)
    """
    exact = series.exact()
    if len(exact) < 3:
        raise InsufficientTermsError("Extensão precisa de pelo menos 3 termos exatos")
    last_L = exact.Ls[-1]
    prediction = Prediction()
    with mp.workdps(MP_DPS):
        if on_ratios:
            ratios = [r for _, r in ratio_series(exact)]
            extended, used, diagnostic = extend_sequence(
                ratios, n_extra, order, schedule, cutoff, min_approximants
            )
            value = to_mpf(exact.values()[-1])
            relative = mp.mpf(0)
            for i, (mean, std, count) in enumerate(extended):
                L = last_L + i + 1
                prediction.ratios.append(PredictedTerm(L, mean, std, count))
                value *= mean
                relative += abs(std / mean)
                term = PredictedTerm(L, value, value * relative, count)
                if term.relative_spread > cutoff:
                    diagnostic = diagnostic or f"coeficiente L={L} com espalhamento acima de {cutoff}"
                    break
                prediction.coefficients.append(term)
        else:
            extended, used, diagnostic = extend_sequence(
                exact.values(), n_extra, order, schedule, cutoff, min_approximants
            )
            for i, (mean, std, count) in enumerate(extended):
                prediction.coefficients.append(PredictedTerm(last_L + i + 1, mean, std, count))
    prediction.approximants = used
    prediction.diagnostic = diagnostic
    if not prediction.coefficients:
        logger.warning(f"⚠️ Nenhum termo previsto para {series.problem}: {diagnostic}")
    else:
        logger.info(f"🔮 {series.problem}: {len(prediction.coefficients)} termos previstos com {used} aproximantes")
    return prediction


def extend_series(series: Series, n_extra: int, cutoff: float = PREDICTION_CUTOFF, **kwargs) -> Series:
    """Cópia da série exata com os termos previstos anexados."""
    prediction = predict_coefficients(series, n_extra, cutoff, **kwargs)
    extended = series.exact()
    for entry in prediction.entries():
        extended.add(entry)
    return extended
