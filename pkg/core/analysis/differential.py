"""
Aproximantes diferenciais: Σ_k Q_k(z) θ^k F(z) = P(z), θ = z d/dz.

Os coeficientes dos polinômios saem de um sistema linear exato sobre os
racionais com Q_M(0) = 1. Na versão enviesada cada Q_k recebe o fator
(1 - z/ẑ)^{q_k}, q_k = max(q + k - M, 0), forçando uma singularidade de
ordem q em ẑ.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import mpmath as mp

from config import DEFECTIVE_FACTOR, MP_DPS
from core.errors import DefectiveApproximantError, InsufficientTermsError
from core.analysis.linear import solve_exact
from core.analysis.pade import smallest_positive_root
from core.analysis.ratio import to_mpf

Poly = List[Fraction]


def _poly_mul(a: Poly, b: Poly) -> Poly:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _bias_factor(z_hat: Fraction, power: int) -> Poly:
    """(1 - z/ẑ)^power."""
    factor = [Fraction(1)]
    for _ in range(power):
        factor = _poly_mul(factor, [Fraction(1), -1 / z_hat])
    return factor


def _eval(poly: Sequence[Fraction], z) -> mp.mpf:
    total = mp.mpf(0)
    for coef in reversed(poly):
        total = total * z + to_mpf(coef)
    return total


def _derivative(poly: Sequence[Fraction]) -> Poly:
    return [k * c for k, c in enumerate(poly)][1:] or [Fraction(0)]


@dataclass
class Singularity:
    z: mp.mpc
    exponent: Optional[mp.mpf]
    multiple: bool = False

    @property
    def is_real_positive(self) -> bool:
        return abs(mp.im(self.z)) <= mp.mpf(10) ** (-MP_DPS // 2) * max(1, abs(self.z)) and mp.re(self.z) > 0


@dataclass
class DiffApprox:
    order: int
    degrees: Tuple[int, ...]
    K: int
    Q: List[Poly]
    P: Poly
    n_coefficients: int
    degenerate: bool = False
    bias_point: Optional[Fraction] = None
    bias_order: Optional[int] = None
    bias_exponents: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def key(self) -> Tuple[int, Tuple[int, ...], int]:
        return self.order, self.degrees, self.K

    def residual(self, coefficients: Sequence, n: int) -> Fraction:
        """Coeficiente de z^n em Σ Q_k θ^k F - P."""
        f = [Fraction(v) for v in coefficients]
        total = Fraction(0)
        for k, poly in enumerate(self.Q):
            for j, q in enumerate(poly):
                if q and 0 <= n - j < len(f):
                    total += q * (n - j) ** k * f[n - j]
        if n < len(self.P):
            total -= self.P[n]
        return total

    def extend(self, coefficients: Sequence, n_total: int) -> List[mp.mpf]:
        """
        Continua a série pela recorrência da EDO até n_total termos.

        Os valores conhecidos são mantidos; cada novo f_n sai de
        f_n = (p_n - Σ_{j>=1} Σ_k q_{k,j} (n-j)^k f_{n-j}) / Σ_k q_{k,0} n^k.
        """
        with mp.workdps(MP_DPS):
            f = [to_mpf(v) for v in coefficients]
            Q = [[to_mpf(c) for c in poly] for poly in self.Q]
            P = [to_mpf(c) for c in self.P]
            for n in range(len(f), n_total):
                lead = sum(poly[0] * mp.mpf(n) ** k for k, poly in enumerate(Q) if poly)
                if lead == 0:
                    raise DefectiveApproximantError(f"Recorrência singular em n={n}")
                acc = P[n] if n < len(P) else mp.mpf(0)
                for k, poly in enumerate(Q):
                    for j in range(1, min(len(poly), n + 1)):
                        if poly[j]:
                            acc -= poly[j] * mp.mpf(n - j) ** k * f[n - j]
                f.append(acc / lead)
            return f


def _fit(
    coefficients: Sequence,
    order: int,
    degrees: Sequence[int],
    K: int,
    factors: Sequence[Poly],
    free_degrees: Sequence[int],
    n_equations: int,
) -> Tuple[List[Poly], Poly, bool]:
    f = [Fraction(v) for v in coefficients]
    if len(f) < n_equations:
        raise InsufficientTermsError(f"São necessários {n_equations} coeficientes, há {len(f)}")

    # incógnitas: Q̂_M (j >= 1), Q̂_{M-1}..Q̂_0, depois P
    unknowns: List[Tuple[str, int, int]] = [("Q", order, j) for j in range(1, free_degrees[order] + 1)]
    for k in range(order - 1, -1, -1):
        unknowns += [("Q", k, j) for j in range(free_degrees[k] + 1)]
    unknowns += [("P", 0, j) for j in range(K + 1)]

    def theta_term(k: int, shift: int, n: int) -> Fraction:
        # coeficiente de z^n em z^shift · factor_k · θ^k F
        total = Fraction(0)
        for t, a in enumerate(factors[k]):
            i = n - shift - t
            if a and 0 <= i < len(f):
                total += a * i ** k * f[i]
        return total

    rows, rhs = [], []
    for n in range(n_equations):
        row = []
        for kind, k, j in unknowns:
            if kind == "P":
                row.append(Fraction(-1) if n == j else Fraction(0))
            else:
                row.append(theta_term(k, j, n))
        rows.append(row)
        rhs.append(-theta_term(order, 0, n))

    solution = solve_exact(rows, rhs)
    hats = {k: [Fraction(0)] * (free_degrees[k] + 1) for k in range(order + 1)}
    hats[order][0] = Fraction(1)
    P = [Fraction(0)] * (K + 1)
    for (kind, k, j), value in zip(unknowns, solution.values):
        if kind == "P":
            P[j] = value
        else:
            hats[k][j] = value
    Q = [_poly_mul(factors[k], hats[k]) for k in range(order + 1)]
    return Q, P, solution.degenerate


def _check_degrees(order: int, degrees: Sequence[int], K: int) -> Tuple[int, ...]:
    degrees = tuple(int(d) for d in degrees)
    if order < 1:
        raise ValueError("Ordem M deve ser >= 1")
    if len(degrees) != order + 1:
        raise ValueError(f"São necessários {order + 1} graus N_0..N_M")
    if min(degrees) < 0 or K < -1:
        raise ValueError("Graus devem ser >= 0 e K >= -1")
    return degrees


def da_terms(order: int, degrees: Sequence[int], K: int) -> int:
    """N = K + Σ (N_k + 1)."""
    return K + sum(d + 1 for d in degrees)


def fit_da(coefficients: Sequence, order: int, degrees: Sequence[int], K: int) -> DiffApprox:
    """
    Ajusta um aproximante diferencial aos primeiros N coeficientes.

    Args:
        coefficients: f_0, f_1, ... exatos (inteiros ou Fraction)
        order: M
        degrees: N_0..N_M
        K: Grau de P; -1 para a EDO homogênea

    Returns:
        DiffApprox que reproduz os N primeiros coeficientes
    """
    degrees = _check_degrees(order, degrees, K)
    n = da_terms(order, degrees, K)
    factors = [[Fraction(1)]] * (order + 1)
    Q, P, degenerate = _fit(coefficients, order, degrees, K, factors, degrees, n)
    return DiffApprox(order, degrees, K, Q, P, n, degenerate)


def fit_biased_da(
    coefficients: Sequence,
    order: int,
    degrees: Sequence[int],
    K: int,
    z_hat,
    q: int = 1,
) -> DiffApprox:
    """
    Aproximante com Q_k = (1 - z/ẑ)^{q_k} Q̂_k, grau de Q̂_k = N_k - q_k.

    O sistema usa N̂ - 1 equações, N̂ = K + 1 + Σ (N_k - q_k + 1), o
    mesmo número de incógnitas livres depois de fixar Q̂_M(0) = 1.
    """
    degrees = _check_degrees(order, degrees, K)
    if not 1 <= q <= order:
        raise ValueError("Ordem do viés q deve estar em 1..M")
    z_hat = Fraction(str(z_hat)) if not isinstance(z_hat, Fraction) else z_hat
    if z_hat <= 0:
        raise ValueError("ẑ deve ser positivo")
    exps = tuple(max(q + k - order, 0) for k in range(order + 1))
    free = [d - e for d, e in zip(degrees, exps)]
    if min(free) < 0:
        raise ValueError(f"Graus {degrees} pequenos demais para o viés {exps}")
    n_hat = K + 1 + sum(f + 1 for f in free)
    factors = [_bias_factor(z_hat, e) for e in exps]
    Q, P, degenerate = _fit(coefficients, order, degrees, K, factors, free, n_hat - 1)
    return DiffApprox(order, degrees, K, Q, P, n_hat - 1, degenerate, z_hat, q, exps)


def singularities(da: DiffApprox) -> List[Singularity]:
    """
    Raízes de Q_M e expoentes γ = M - 1 - Q_{M-1}(z) / (z Q_M'(z)).

    Raízes múltiplas são marcadas e ficam sem expoente.
    """
    top = list(da.Q[da.order])
    while top and top[-1] == 0:
        top.pop()
    if len(top) < 2:
        raise DefectiveApproximantError("Q_M constante: sem singularidades")
    with mp.workdps(MP_DPS):
        try:
            roots = mp.polyroots([to_mpf(c) for c in reversed(top)], maxsteps=200, extraprec=2 * MP_DPS)
        except mp.libmp.NoConvergence as e:
            raise DefectiveApproximantError(f"Raízes de Q_M não convergiram: {e}") from e
        tol = mp.mpf(10) ** (-MP_DPS // 3)
        dQ = _derivative(top)
        below = da.Q[da.order - 1]
        out = []
        for i, z in enumerate(roots):
            multiple = any(abs(z - w) <= tol * max(1, abs(z)) for j, w in enumerate(roots) if j != i)
            exponent = None
            if not multiple:
                gamma = da.order - 1 - _eval(below, z) / (z * _eval(dQ, z))
                exponent = mp.re(gamma) if abs(mp.im(gamma)) <= tol else gamma
            out.append(Singularity(z, exponent, multiple))
    return sorted(out, key=lambda s: abs(s.z))


def critical_singularity(da: DiffApprox, near=None) -> Optional[Singularity]:
    """Singularidade real positiva mais próxima de `near` (ou a menor)."""
    real = [s for s in singularities(da) if s.is_real_positive]
    if not real:
        return None
    if near is None:
        return min(real, key=lambda s: mp.re(s.z))
    return min(real, key=lambda s: abs(mp.re(s.z) - to_mpf(near)))


def is_defective(da: DiffApprox, consensus_radius, factor: float = DEFECTIVE_FACTOR) -> bool:
    """Singularidade real positiva espúria dentro de factor × raio de consenso."""
    root = smallest_positive_root(da.Q[da.order])
    return root is not None and root < factor * to_mpf(consensus_radius)
