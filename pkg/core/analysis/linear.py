"""
Sistemas lineares exatos sobre os racionais (Padé e aproximantes diferenciais).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from core.errors import DefectiveApproximantError


@dataclass
class ExactSolution:
    values: List[Fraction]
    free: List[int]

    @property
    def degenerate(self) -> bool:
        return bool(self.free)


def _qq(x) -> object:
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def solve_exact(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> ExactSolution:
    """
    Resolve A·x = b por escalonamento reduzido (rref) em QQ.

    Variáveis livres recebem 0 e ficam listadas em `free`.

    Raises:
        DefectiveApproximantError: sistema inconsistente
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    augmented = [[_qq(v) for v in row] + [_qq(b)] for row, b in zip(rows, rhs)]
    if not augmented:
        return ExactSolution([], [])
    reduced, pivots = DomainMatrix(augmented, (n_rows, n_cols + 1), QQ).rref()
    if n_cols in pivots:
        raise DefectiveApproximantError("Sistema linear inconsistente")
    table = reduced.to_Matrix()
    values = [Fraction(0)] * n_cols
    for r, c in enumerate(pivots):
        rational = table[r, n_cols]
        values[c] = Fraction(int(rational.p), int(rational.q))
    return ExactSolution(values, [c for c in range(n_cols) if c not in pivots])
