"""
Método das razões: r_n, interceptos lineares l_n e estimadores de expoente
e de crescimento.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import mpmath as mp

from config import MP_DPS
from core.errors import InsufficientTermsError
from core.exact_count import Series

Data = Union[Series, Sequence]


def to_mpf(value) -> mp.mpf:
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / mp.mpf(value.denominator)
    return mp.mpf(value)


def indexed(data: Data, start: int = 0) -> Tuple[List[int], List]:
    """(índices, valores) de uma Series (índice = L) ou de uma lista (índice = start..)."""
    if isinstance(data, Series):
        return data.Ls, data.values()
    values = list(data)
    return list(range(start, start + len(values))), values


def ratio_series(series: Series) -> List[Tuple[int, Union[Fraction, mp.mpf]]]:
    """R_L = C_L / C_{L-1}, exato enquanto os dois termos forem exatos."""
    out = []
    entries = series.entries
    for prev, cur in zip(entries, entries[1:]):
        if cur.L != prev.L + 1:
            raise InsufficientTermsError(f"Série com lacuna entre L={prev.L} e L={cur.L}")
        if prev.value == 0:
            raise ValueError(f"C_{prev.L} = 0: razão indefinida")
        if prev.is_exact and cur.is_exact:
            out.append((cur.L, Fraction(int(cur.value), int(prev.value))))
        else:
            out.append((cur.L, to_mpf(cur.value) / to_mpf(prev.value)))
    return out


@dataclass
class RatioEstimators:
    r: Dict[int, mp.mpf] = field(default_factory=dict)
    l: Dict[int, mp.mpf] = field(default_factory=dict)
    delta: Dict[int, mp.mpf] = field(default_factory=dict)
    gamma: Dict[int, mp.mpf] = field(default_factory=dict)
    mu: Dict[int, mp.mpf] = field(default_factory=dict)

    def rows(self) -> List[Dict[str, object]]:
        out = []
        for n in sorted(self.r):
            out.append({
                "n": n,
                "r": self.r.get(n),
                "l": self.l.get(n),
                "delta": self.delta.get(n),
                "gamma": self.gamma.get(n),
                "mu": self.mu.get(n),
            })
        return out


def ratio_estimators(
    data: Data,
    z_c: Optional[float] = None,
    gamma: Optional[float] = None,
    start: int = 0,
) -> RatioEstimators:
    """
    Estimadores do método das razões para c_n ~ C μ^n n^(γ-1).

    Args:
        data: Series ou coeficientes c_start, c_start+1, ...
        z_c: Ponto crítico conhecido (habilita γ_n)
        gamma: Expoente conhecido (habilita μ_n)
        start: Índice do primeiro coeficiente quando data é lista

    Returns:
        RatioEstimators com r_n, l_n, δ_n e, se pedidos, γ_n e μ_n
    """
    ns, values = indexed(data, start)
    if len(values) < 3:
        raise InsufficientTermsError("O método das razões precisa de pelo menos 3 termos")
    est = RatioEstimators()
    with mp.workdps(MP_DPS):
        c = [to_mpf(v) for v in values]
        for i in range(1, len(c)):
            if c[i - 1] == 0:
                raise ValueError(f"Coeficiente nulo em n={ns[i - 1]}")
            n = ns[i]
            r = c[i] / c[i - 1]
            est.r[n] = r
            if z_c is not None:
                est.gamma[n] = n * (mp.mpf(z_c) * r - 1) + 1
            if gamma is not None:
                est.mu[n] = n * r / (n + mp.mpf(gamma) - 1)
            if i >= 2:
                prev = est.r[ns[i - 1]]
                est.l[n] = n * r - (n - 1) * prev
                est.delta[n] = 1 + n * n * (1 - r / prev)
    return est
