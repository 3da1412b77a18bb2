"""
Ajustes da forma assintótica C_L ~ λ^{p(L² + bL + c)} · L^g.

M1 extrai λ de C_L^{1/L²}; M2 usa a razão das razões; P1 e P2 obtêm os
parâmetros subdominantes dado λ; as razões com paridade servem ao
domínio quadrado hexagonal, que oscila com período 2.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath as mp
import numpy as np

from config import DEFAULT_FIT_POWERS, FIT_WINDOW_EXTRA, MP_DPS
from core.errors import InsufficientTermsError
from core.exact_count import Series
from core.analysis.ratio import to_mpf


@dataclass
class FitWindow:
    last: int
    coefficients: np.ndarray

    @property
    def intercept(self) -> float:
        return float(self.coefficients[0])


def sliding_fit(
    xs: Sequence[float],
    ys: Sequence[float],
    powers: Sequence[int],
    window: Optional[int] = None,
) -> List[FitWindow]:
    """
    Mínimos quadrados y ≈ a_0 + Σ a_k x^{-k} em janelas deslizantes.

    Args:
        xs: Abscissas (L)
        ys: Valores
        powers: Potências inversas de x no modelo
        window: Pontos por janela; padrão len(powers) + 1 + FIT_WINDOW_EXTRA

    Returns:
        Um FitWindow por janela, identificado pelo último x
    """
    n_params = len(powers) + 1
    window = window or n_params + FIT_WINDOW_EXTRA
    if window < n_params:
        raise ValueError(f"Janela {window} menor que {n_params} parâmetros")
    if len(xs) < window:
        raise InsufficientTermsError(f"Ajuste precisa de {window} pontos, há {len(xs)}")
    x = np.asarray([float(v) for v in xs])
    y = np.asarray([float(v) for v in ys])
    design = np.column_stack([np.ones_like(x)] + [x ** (-float(k)) for k in powers])
    out = []
    for end in range(window, len(x) + 1):
        rows = slice(end - window, end)
        coef, *_ = np.linalg.lstsq(design[rows], y[rows], rcond=None)
        out.append(FitWindow(int(x[end - 1]), coef))
    return out


@dataclass
class FitResult:
    method: str
    lam: Optional[float] = None
    b: Optional[float] = None
    c: Optional[float] = None
    g: Optional[float] = None
    raw: Dict[int, float] = field(default_factory=dict)
    estimates: Dict[int, float] = field(default_factory=dict)
    powers: Tuple[int, ...] = ()
    window: Optional[int] = None
    extras: Dict[str, object] = field(default_factory=dict)

    def spec(self) -> Dict[str, object]:
        return {"method": self.method, "powers": list(self.powers), "window": self.window}


def _entries(series: Series, min_terms: int) -> Tuple[List[int], List[mp.mpf]]:
    if len(series) < min_terms:
        raise InsufficientTermsError(f"São necessários {min_terms} termos, há {len(series)}")
    values = [to_mpf(v) for v in series.values()]
    if any(v <= 0 for v in values):
        raise ValueError("Termos devem ser positivos")
    return series.Ls, values


def m1_lambda(
    series: Series,
    size_exponent: int = 1,
    fit_powers: Sequence[int] = DEFAULT_FIT_POWERS,
    window: Optional[int] = None,
) -> FitResult:
    """
    λ_L = C_L^{1/L²} extrapolado em potências de 1/L.

    O intercepto estima λ^p (p = size_exponent); `lam` é λ.
    """
    with mp.workdps(MP_DPS):
        Ls, C = _entries(series, 2)
        raw = {L: float(mp.power(c, mp.mpf(1) / (L * L))) for L, c in zip(Ls, C)}
    fits = sliding_fit(Ls, [raw[L] for L in Ls], fit_powers, window)
    estimates = {f.last: f.intercept for f in fits}
    top = fits[-1].intercept
    return FitResult(
        method="m1",
        lam=top ** (1.0 / size_exponent),
        raw=raw,
        estimates=estimates,
        powers=tuple(fit_powers),
        window=window or len(fit_powers) + 1 + FIT_WINDOW_EXTRA,
        extras={"lambda_power": top, "size_exponent": size_exponent},
    )


def ratio_of_ratios(series: Series) -> Dict[int, mp.mpf]:
    """𝓒_L = C_{L+1} C_{L-1} / C_L²."""
    with mp.workdps(MP_DPS):
        Ls, C = _entries(series, 3)
        return {Ls[i]: C[i + 1] * C[i - 1] / (C[i] * C[i]) for i in range(1, len(C) - 1)}


def m2_ratio_of_ratios(
    series: Series,
    fit_powers: Sequence[int] = (2, 3),
    size_exponent: int = 1,
    window: Optional[int] = None,
) -> FitResult:
    """
    Razão das razões ajustada a c_0 + c_2/L² + c_3/L³.

    c_0 estima λ^{2p}; c_2 estima -g λ^{2p} (método P3).
    """
    if len(series) < 4:
        raise InsufficientTermsError("M2 precisa de pelo menos 4 termos")
    rr = ratio_of_ratios(series)
    Ls = sorted(rr)
    fits = sliding_fit(Ls, [rr[L] for L in Ls], fit_powers, window)
    last = fits[-1]
    c0 = last.intercept
    extras = {"c0": c0, "size_exponent": size_exponent}
    g = None
    if 2 in fit_powers:
        c2 = float(last.coefficients[1 + list(fit_powers).index(2)])
        extras["c2"] = c2
        extras["c2_sequence"] = {f.last: float(f.coefficients[1 + list(fit_powers).index(2)]) for f in fits}
        g = -c2 / c0
    return FitResult(
        method="m2",
        lam=c0 ** (1.0 / (2 * size_exponent)),
        g=g,
        raw={L: float(v) for L, v in rr.items()},
        estimates={f.last: f.intercept for f in fits},
        powers=tuple(fit_powers),
        window=window or len(fit_powers) + 1 + FIT_WINDOW_EXTRA,
        extras=extras,
    )


def _reduced(series: Series, lam: float, size_exponent: int) -> Tuple[List[int], List[mp.mpf]]:
    """d_L = C_L / λ^{p L²}."""
    if lam <= 1:
        raise ValueError("λ deve ser > 1")
    Ls, C = _entries(series, 2)
    lam = mp.mpf(lam)
    return Ls, [c / mp.power(lam, size_exponent * L * L) for L, c in zip(Ls, C)]


def p1_subdominant(
    series: Series,
    lam: float,
    g: float = 0.0,
    size_exponent: int = 1,
    fit_powers: Sequence[int] = DEFAULT_FIT_POWERS,
    window: Optional[int] = None,
) -> FitResult:
    """
    α = λ^{pb} e C = λ^{pc} a partir de d_L = C_L / λ^{pL²}.

    α_L = (d_L / d_{L-1}) ((L-1)/L)^g; C_L = d_L / (α^L L^g), com α
    extrapolado. Sem janelas suficientes, usa o último valor bruto.
    """
    with mp.workdps(MP_DPS):
        Ls, d = _reduced(series, lam, size_exponent)
        gm = mp.mpf(g)
        alpha_raw = {
            Ls[i]: d[i] / d[i - 1] * mp.power(mp.mpf(Ls[i] - 1) / Ls[i], gm) for i in range(1, len(d))
        }
        alpha_Ls = sorted(alpha_raw)
        alpha_fits = _maybe_fit(alpha_Ls, [alpha_raw[L] for L in alpha_Ls], fit_powers, window)
        alpha = alpha_fits[-1] if alpha_fits else float(alpha_raw[alpha_Ls[-1]])
        amp_raw = {L: dL / (mp.power(alpha, L) * mp.power(L, gm)) for L, dL in zip(Ls, d)}
        amp_fits = _maybe_fit(Ls, [amp_raw[L] for L in Ls], fit_powers, window)
        amplitude = amp_fits[-1] if amp_fits else float(amp_raw[Ls[-1]])
        log_lam = size_exponent * float(mp.log(lam))
    return FitResult(
        method="p1",
        lam=lam,
        b=float(mp.log(alpha)) / log_lam,
        c=float(mp.log(amplitude)) / log_lam,
        g=g,
        raw={L: float(v) for L, v in alpha_raw.items()},
        estimates={L: float(v) for L, v in amp_raw.items()},
        powers=tuple(fit_powers),
        window=window,
        extras={"alpha": alpha, "amplitude": amplitude},
    )


def _maybe_fit(xs, ys, powers, window) -> List[float]:
    try:
        return [f.intercept for f in sliding_fit(xs, ys, powers, window)]
    except InsufficientTermsError:
        return []


@dataclass
class TripleFit:
    L: int
    b_log_lambda: float
    c_log_lambda: float
    g: float


def p2_triple_fit(series: Series, lam: float, size_exponent: int = 1) -> List[TripleFit]:
    """
    Resolve log d_L = pB·L + pC + g·log L exatamente em cada trinca
    consecutiva (L-1, L, L+1); B = b log λ e C = c log λ.
    """
    if len(series) < 3:
        raise InsufficientTermsError("P2 precisa de pelo menos 3 termos")
    out = []
    with mp.workdps(MP_DPS):
        Ls, d = _reduced(series, lam, size_exponent)
        logs = [mp.log(v) for v in d]
        for i in range(1, len(d) - 1):
            rows = [[mp.mpf(Ls[j]), mp.mpf(1), mp.log(Ls[j])] for j in (i - 1, i, i + 1)]
            rhs = [logs[j] for j in (i - 1, i, i + 1)]
            x = mp.lu_solve(mp.matrix(rows), mp.matrix(rhs))
            out.append(
                TripleFit(
                    L=Ls[i],
                    b_log_lambda=float(x[0]) / size_exponent,
                    c_log_lambda=float(x[1]) / size_exponent,
                    g=float(x[2]),
                )
            )
    return out


@dataclass
class ParityRatios:
    r_star: Dict[int, float]
    c_star: Dict[int, float]
    averaged: Dict[int, float]
    fit: Optional[FitResult] = None


def parity_adjusted_ratios(
    series: Series,
    fit_powers: Sequence[int] = (2, 4),
    size_exponent: int = 2,
    window: Optional[int] = None,
) -> ParityRatios:
    """
    r*_L = sqrt(C_L / C_{L-2}) e 𝓒*_L = (C_{L-2} C_{L+2} / C_L²)^{1/4}.

    `averaged` é a média de estimadores consecutivos de 𝓒*; quando há
    termos suficientes, `fit` ajusta 𝓒* = c_0 + c_2/L² + c_4/L⁴ (c_2 estima
    -g λ^{2p}); termos ímpares em 1/L se cancelam entre as paridades.
    """
    if len(series) < 5:
        raise InsufficientTermsError("Razões com paridade precisam de 5 termos")
    with mp.workdps(MP_DPS):
        Ls, C = _entries(series, 5)
        r_star = {Ls[i]: float(mp.sqrt(C[i] / C[i - 2])) for i in range(2, len(C))}
        c_star = {
            Ls[i]: float(mp.root(C[i - 2] * C[i + 2] / (C[i] * C[i]), 4)) for i in range(2, len(C) - 2)
        }
    keys = sorted(c_star)
    averaged = {b: (c_star[a] + c_star[b]) / 2 for a, b in zip(keys, keys[1:])}
    fit = None
    try:
        fits = sliding_fit(keys, [c_star[L] for L in keys], fit_powers, window)
        last = fits[-1]
        c0 = last.intercept
        extras = {"c0": c0}
        if 2 in fit_powers:
            extras["c2"] = float(last.coefficients[1 + list(fit_powers).index(2)])
        fit = FitResult(
            method="parity",
            lam=c0 ** (1.0 / (2 * size_exponent)),
            estimates={f.last: f.intercept for f in fits},
            powers=tuple(fit_powers),
            window=window,
            extras=extras,
        )
    except InsufficientTermsError:
        pass
    return ParityRatios(r_star=r_star, c_star=c_star, averaged=averaged, fit=fit)
