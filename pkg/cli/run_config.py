"""
Configuração de uma execução da linha de comando.
"""
import json
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

from config import (
    M2_PREDICTED_CAP,
    PREDICTION_CUTOFF,
    PREDICTION_ORDER,
    RATIO_PREDICTED_CAP,
    TRIM_FRACTION,
    WORKERS,
)
from core.problems import get_problem

COMMANDS = ("enumerate", "combine", "extend", "analyze", "selftest")
METHODS = ("m1", "m2", "p1", "p2", "p3", "ratio", "pade", "da", "bda-scan", "predict-check")


@dataclass
class RunConfig:
    command: str
    problem: Optional[str] = None
    L_min: int = 1
    L_max: Optional[int] = None
    primes: Optional[int] = None
    workers: int = WORKERS
    verify: bool = False
    series: Optional[str] = None
    residues: Tuple[str, ...] = ()
    out: Optional[str] = None
    terms: int = 1
    cutoff: float = PREDICTION_CUTOFF
    method: Optional[str] = None
    lam: Optional[float] = None
    g: float = 0.0
    z_c: Optional[float] = None
    gamma: Optional[float] = None
    fit_powers: Optional[Tuple[int, ...]] = None
    order: int = PREDICTION_ORDER
    pade_pairs: Tuple[Tuple[int, int], ...] = ()
    lambda_grid: Tuple[float, ...] = ()
    trim: float = TRIM_FRACTION
    m2_cap: Optional[int] = M2_PREDICTED_CAP
    ratio_cap: Optional[int] = RATIO_PREDICTED_CAP
    holdout: int = 1
    extra: Dict[str, object] = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        """Checa a combinação de opções antes de qualquer trabalho."""
        if self.command not in COMMANDS:
            raise ValueError(f"Comando desconhecido: {self.command}")
        if self.problem is not None:
            get_problem(self.problem)
        if self.command == "enumerate":
            if self.problem is None or self.L_max is None:
                raise ValueError("enumerate exige --problem e --lmax")
            if not 1 <= self.L_min <= self.L_max:
                raise ValueError(f"Faixa de L inválida: {self.L_min}..{self.L_max}")
            if self.primes is not None and self.primes < 1:
                raise ValueError("--primes deve ser >= 1")
        if self.workers < 1:
            raise ValueError("--workers deve ser >= 1")
        if self.command == "combine" and not self.residues:
            raise ValueError("combine exige --residues")
        if self.command in ("extend", "analyze") and not self.series:
            raise ValueError(f"{self.command} exige --series")
        if self.command == "extend" and self.terms < 1:
            raise ValueError("--terms deve ser >= 1")
        if self.command == "analyze":
            if self.method not in METHODS:
                raise ValueError(f"Método desconhecido: {self.method}")
            if self.method in ("p1", "p2") and self.lam is None:
                raise ValueError(f"{self.method} exige --lambda")
            if self.method == "bda-scan" and not self.lambda_grid:
                raise ValueError("bda-scan exige --lambda-grid")
        if not 0 <= self.trim < 0.5:
            raise ValueError("--trim deve estar em [0, 0.5)")
        if not 0 < self.cutoff < 1:
            raise ValueError("--cutoff deve estar em (0, 1)")
        if self.order < 1:
            raise ValueError("--order deve ser >= 1")
        return self

    def to_dict(self) -> Dict[str, object]:
        data = asdict(self)
        return {k: list(v) if isinstance(v, tuple) else v for k, v in data.items() if v not in (None, (), {})}

    def header_lines(self) -> List[str]:
        return [f"# config: {json.dumps(self.to_dict(), sort_keys=True)}"]
