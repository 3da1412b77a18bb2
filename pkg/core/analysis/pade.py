"""
Aproximantes de Padé P_m(z)/Q_n(z) resolvidos em aritmética racional.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import mpmath as mp

from config import MP_DPS
from core.errors import DefectiveApproximantError, InsufficientTermsError
from core.analysis.linear import solve_exact
from core.analysis.ratio import to_mpf


@dataclass
class PadeApproximant:
    m: int
    n: int
    numerator: List[Fraction]
    denominator: List[Fraction]
    root: Optional[mp.mpf]
    degenerate: bool = False

    @property
    def growth(self) -> Optional[mp.mpf]:
        """λ = 1/sqrt(z_c) para séries de razões, cujo raio é 1/λ²."""
        if self.root is None:
            return None
        with mp.workdps(MP_DPS):
            return 1 / mp.sqrt(self.root)


def smallest_positive_root(coefficients: Sequence[Fraction]) -> Optional[mp.mpf]:
    """Menor raiz real positiva do polinômio Σ a_k z^k (None se não houver)."""
    coeffs = list(coefficients)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        return None
    with mp.workdps(MP_DPS):
        try:
            roots = mp.polyroots([to_mpf(c) for c in reversed(coeffs)], maxsteps=200, extraprec=2 * MP_DPS)
        except mp.libmp.NoConvergence as e:
            raise DefectiveApproximantError(f"Raízes não convergiram: {e}") from e
        tol = mp.mpf(10) ** (-MP_DPS // 2)
        real = [mp.re(r) for r in roots if abs(mp.im(r)) <= tol * max(1, abs(r)) and mp.re(r) > 0]
        return min(real) if real else None


def pade(coefficients: Sequence, m: int, n: int) -> PadeApproximant:
    """
    P_{m,n} com q_0 = 1 e casamento de Taylor até a ordem m + n.

    Args:
        coefficients: c_0, c_1, ... (inteiros ou Fraction)
        m: Grau do numerador
        n: Grau do denominador

    Returns:
        PadeApproximant com a menor raiz real positiva de Q_n
    """
    if m < 0 or n < 0:
        raise ValueError("Graus devem ser >= 0")
    if len(coefficients) < m + n + 1:
        raise InsufficientTermsError(f"Padé [{m}/{n}] precisa de {m + n + 1} coeficientes")
    c = [Fraction(v) for v in coefficients[: m + n + 1]]

    def at(i: int) -> Fraction:
        return c[i] if i >= 0 else Fraction(0)

    # Σ_{j=1..n} q_j c_{k-j} = -c_k, k = m+1..m+n
    rows = [[at(k - j) for j in range(1, n + 1)] for k in range(m + 1, m + n + 1)]
    rhs = [-c[k] for k in range(m + 1, m + n + 1)]
    solution = solve_exact(rows, rhs) if n else None
    q = [Fraction(1)] + (solution.values if solution else [])
    p = [sum((q[j] * at(k - j) for j in range(min(k, n) + 1)), Fraction(0)) for k in range(m + 1)]
    return PadeApproximant(
        m=m,
        n=n,
        numerator=p,
        denominator=q,
        root=smallest_positive_root(q),
        degenerate=bool(solution and solution.degenerate),
    )


def pade_table(coefficients: Sequence, pairs: Sequence) -> List[PadeApproximant]:
    """Aproximantes para cada (m, n); sistemas singulares são pulados."""
    out = []
    for m, n in pairs:
        try:
            approximant = pade(coefficients, m, n)
        except DefectiveApproximantError:
            continue
        if not approximant.degenerate:
            out.append(approximant)
    return out
