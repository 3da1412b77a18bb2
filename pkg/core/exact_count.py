"""
Contagens exatas: primos abaixo de 2^62, reconstrução pelo teorema
chinês do resto e os arquivos de série e de resíduos.
"""
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import mpmath as mp
from sympy import isprime, prevprime
from sympy.ntheory.modular import crt

from config import BOUND_SAFETY_TERMS, DEFAULT_PRIME_COUNT, PRIME_CEILING
from core.errors import InsufficientPrimesError, SeriesFormatError
from core.problems import ProblemSpec, get_problem
from core.tm_engine import TransferMatrix
from utils.logger import logger

EXACT, PREDICTED = "exact", "predicted"
Number = Union[int, mp.mpf]


# ------------------------------------------------------------------ primos

@dataclass(frozen=True)
class PrimeSet:
    primes: Tuple[int, ...]

    def __post_init__(self):
        if len(set(self.primes)) != len(self.primes):
            raise ValueError("Primos repetidos")

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes)

    def __getitem__(self, i):
        return self.primes[i]

    @property
    def product(self) -> int:
        return math.prod(self.primes)

    @property
    def log_product(self) -> float:
        return sum(math.log(p) for p in self.primes)


_PRIME_CACHE: List[int] = []


def generate_primes(k: int) -> PrimeSet:
    """
    Os k maiores primos abaixo de 2^62, em ordem decrescente.

    Args:
        k: Quantidade (>= 1)

    Returns:
        PrimeSet certificado por teste determinístico (sympy.isprime)
    """
    if k < 1:
        raise ValueError("k deve ser >= 1")
    while len(_PRIME_CACHE) < k:
        start = _PRIME_CACHE[-1] if _PRIME_CACHE else PRIME_CEILING
        p = prevprime(start)
        assert isprime(p)
        _PRIME_CACHE.append(int(p))
    return PrimeSet(tuple(_PRIME_CACHE[:k]))


def crt_combine(residues: Sequence[int], primes: Union[PrimeSet, Sequence[int]]) -> int:
    """Único x em [0, Πp) com x ≡ residues[k] (mod p_k)."""
    moduli = list(primes)
    if len(residues) != len(moduli):
        raise ValueError(f"{len(residues)} resíduos para {len(moduli)} primos")
    for r, p in zip(residues, moduli):
        if not 0 <= r < p:
            raise ValueError(f"Resíduo {r} não reduzido módulo {p}")
    if len(moduli) == 1:
        return int(residues[0])
    solution = crt(moduli, [int(r) for r in residues])
    if solution is None:
        raise ArithmeticError("Sistema de congruências sem solução")
    return int(solution[0])


def _extra_prime(used: Iterable[int]) -> int:
    used = set(used)
    k = len(used) + 1
    while generate_primes(k)[-1] in used:
        k += 1
    return generate_primes(k)[-1]


def log_count_bound(problem: ProblemSpec, L: int) -> float:
    """Cota para log C_L: λ^{p L² + 4(L+1)} (L+1)² · 2."""
    exponent = problem.size_exponent * L * L + BOUND_SAFETY_TERMS * (L + 1)
    return math.log(problem.growth) * exponent + 2 * math.log(L + 1) + math.log(2)


def primes_needed(problem: Union[str, ProblemSpec], L: int) -> int:
    """Menor k tal que o produto dos k maiores primos excede a cota."""
    spec = get_problem(problem) if isinstance(problem, str) else problem
    bound = log_count_bound(spec, L)
    k = 1
    while generate_primes(k).log_product <= bound:
        k += 1
    return k


# ------------------------------------------------------------------ séries

@dataclass(frozen=True)
class SeriesEntry:
    L: int
    value: Number
    kind: str = EXACT
    stderr: Optional[mp.mpf] = None

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT


@dataclass
class Series:
    problem: str
    entries: List[SeriesEntry] = field(default_factory=list)
    config: Dict = field(default_factory=dict)

    def add(self, entry: SeriesEntry) -> None:
        if self.entries and entry.L <= self.entries[-1].L:
            if any(e.L == entry.L and e.is_exact for e in self.entries):
                raise SeriesFormatError(f"Termo exato L={entry.L} já gravado em {self.problem}")
            raise SeriesFormatError(f"L={entry.L} fora de ordem em {self.problem}")
        self.entries.append(entry)

    @property
    def is_exact(self) -> bool:
        return all(e.is_exact for e in self.entries)

    @property
    def Ls(self) -> List[int]:
        return [e.L for e in self.entries]

    def exact(self) -> "Series":
        """Só os termos exatos."""
        return Series(self.problem, [e for e in self.entries if e.is_exact], dict(self.config))

    def capped(self, max_predicted: Optional[int]) -> "Series":
        """Todos os exatos mais no máximo `max_predicted` termos previstos."""
        if max_predicted is None:
            return Series(self.problem, list(self.entries), dict(self.config))
        kept, extra = [], 0
        for e in self.entries:
            if not e.is_exact:
                if extra >= max_predicted:
                    break
                extra += 1
            kept.append(e)
        return Series(self.problem, kept, dict(self.config))

    def values(self) -> List[Number]:
        return [e.value for e in self.entries]

    def value_at(self, L: int) -> Number:
        for e in self.entries:
            if e.L == L:
                return e.value
        raise KeyError(L)

    def __len__(self) -> int:
        return len(self.entries)


def _format_number(value: Number) -> str:
    if isinstance(value, int):
        return str(value)
    return mp.nstr(value, 20)


def _parse_number(text: str) -> Number:
    try:
        return int(text)
    except ValueError:
        try:
            return mp.mpf(text)
        except (ValueError, TypeError):
            raise SeriesFormatError(f"Valor inválido: {text!r}") from None


def _headers(lines: Iterable[str]) -> Tuple[Dict[str, str], List[Tuple[int, str]]]:
    headers: Dict[str, str] = {}
    body: List[Tuple[int, str]] = []
    for number, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if not sep:
                raise SeriesFormatError(f"Cabeçalho malformado na linha {number}: {line!r}")
            headers[key.strip()] = value.strip()
        else:
            body.append((number, line))
    return headers, body


def read_series(path: Union[str, Path]) -> Series:
    """Lê `# problem:`, `# kind:`, `# config:` e linhas L<TAB>valor[<TAB>erro]."""
    path = Path(path)
    try:
        headers, body = _headers(path.read_text(encoding="utf-8").splitlines())
    except OSError as e:
        raise SeriesFormatError(f"Não foi possível ler {path}: {e}") from e
    if "problem" not in headers or "kind" not in headers:
        raise SeriesFormatError(f"{path}: faltam os cabeçalhos problem/kind")
    if headers["kind"] not in (EXACT, PREDICTED):
        raise SeriesFormatError(f"{path}: kind inválido {headers['kind']!r}")
    config = {}
    if "config" in headers:
        try:
            config = json.loads(headers["config"])
        except json.JSONDecodeError as e:
            raise SeriesFormatError(f"{path}: config inválida: {e}") from e

    series = Series(headers["problem"], config=config)
    for number, line in body:
        cols = line.split("\t")
        if len(cols) not in (2, 3):
            raise SeriesFormatError(f"{path}:{number}: esperado L<TAB>valor[<TAB>erro]")
        try:
            L = int(cols[0])
        except ValueError:
            raise SeriesFormatError(f"{path}:{number}: L inválido {cols[0]!r}") from None
        if len(cols) == 3:
            if headers["kind"] == EXACT:
                raise SeriesFormatError(f"{path}:{number}: termo previsto em série exata")
            entry = SeriesEntry(L, _parse_number(cols[1]), PREDICTED, mp.mpf(_parse_number(cols[2])))
        else:
            entry = SeriesEntry(L, _parse_number(cols[1]))
        series.add(entry)
    return series


def write_series(series: Series, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# problem: {series.problem}", f"# kind: {EXACT if series.is_exact else PREDICTED}"]
    if series.config:
        lines.append(f"# config: {json.dumps(series.config, sort_keys=True)}")
    for e in series.entries:
        row = f"{e.L}\t{_format_number(e.value)}"
        if not e.is_exact:
            row += f"\t{mp.nstr(e.stderr, 6)}"
        lines.append(row)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info(f"💾 Série {series.problem} gravada em {path} ({len(series)} termos)")
    return path


# ---------------------------------------------------------------- resíduos

@dataclass
class ResidueFile:
    problem: str
    prime: int
    residues: Dict[int, int]
    config: Dict = field(default_factory=dict)


def write_residues(residue_file: ResidueFile, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# problem: {residue_file.problem}", f"# prime: {residue_file.prime}"]
    if residue_file.config:
        lines.append(f"# config: {json.dumps(residue_file.config, sort_keys=True)}")
    lines += [f"{L}\t{r}" for L, r in sorted(residue_file.residues.items())]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def read_residues(path: Union[str, Path]) -> ResidueFile:
    path = Path(path)
    try:
        headers, body = _headers(path.read_text(encoding="utf-8").splitlines())
    except OSError as e:
        raise SeriesFormatError(f"Não foi possível ler {path}: {e}") from e
    try:
        problem, prime = headers["problem"], int(headers["prime"])
    except (KeyError, ValueError):
        raise SeriesFormatError(f"{path}: cabeçalhos problem/prime ausentes ou inválidos") from None
    residues: Dict[int, int] = {}
    for number, line in body:
        cols = line.split("\t")
        try:
            L, r = int(cols[0]), int(cols[1])
        except (ValueError, IndexError):
            raise SeriesFormatError(f"{path}:{number}: esperado L<TAB>resíduo") from None
        if len(cols) != 2 or not 0 <= r < prime:
            raise SeriesFormatError(f"{path}:{number}: resíduo inválido para p={prime}")
        residues[L] = r
    config = json.loads(headers["config"]) if "config" in headers else {}
    return ResidueFile(problem, prime, residues, config)


def combine_residue_files(paths: Sequence[Union[str, Path]]) -> Series:
    """Junta por CRT os resíduos de um mesmo problema em primos distintos."""
    files = [read_residues(p) for p in paths]
    if not files:
        raise ValueError("Nenhum arquivo de resíduos")
    problems = {f.problem for f in files}
    if len(problems) != 1:
        raise SeriesFormatError(f"Arquivos de problemas diferentes: {sorted(problems)}")
    primes = PrimeSet(tuple(f.prime for f in files))
    problem = problems.pop()
    spec = get_problem(problem)
    common = sorted(set.intersection(*(set(f.residues) for f in files)))
    series = Series(problem, config=dict(files[0].config))
    for L in common:
        if primes.log_product <= log_count_bound(spec, L):
            logger.warning(f"⚠️ {problem} L={L}: {len(primes)} primos podem não bastar")
        series.add(SeriesEntry(L, crt_combine([f.residues[L] for f in files], primes)))
    return series


# ------------------------------------------------------------- orquestração

def enumerate_exact(
    problem: Union[str, ProblemSpec],
    L_max: int,
    primes: Optional[PrimeSet] = None,
    workers: int = 1,
    verify: bool = False,
    L_min: int = 1,
    residue_dir: Optional[Union[str, Path]] = None,
    config: Optional[Dict] = None,
) -> Series:
    """
    Contagens exatas para L = L_min..L_max.

    Args:
        problem: Identificador ou ProblemSpec
        L_max: Maior tamanho
        primes: Primos a usar; padrão é o mínimo exigido pela cota
        workers: Threads da varredura
        verify: Refaz cada L com um primo extra e compara
        residue_dir: Se dado, grava um arquivo de resíduos por primo
        config: Metadados gravados nos arquivos

    Returns:
        Series exata
    """
    spec = get_problem(problem) if isinstance(problem, str) else problem
    series = Series(spec.id, config=dict(config or {}))
    residue_files: Dict[int, ResidueFile] = {}
    try:
        for L in range(L_min, L_max + 1):
            needed = primes_needed(spec, L)
            use = primes or generate_primes(max(needed, DEFAULT_PRIME_COUNT))
            if len(use) < needed:
                raise InsufficientPrimesError(
                    f"{spec.id} L={L}: {len(use)} primos, a cota exige {needed}"
                )
            matrix = TransferMatrix(spec, L, workers=workers)
            residues = [matrix.residue(p) for p in use]
            value = crt_combine(residues, use)
            if verify:
                extra = _extra_prime(use)
                checked = crt_combine(residues + [matrix.residue(extra)], PrimeSet(tuple(use) + (extra,)))
                if checked != value:
                    raise InsufficientPrimesError(
                        f"{spec.id} L={L}: primo extra mudou o valor ({value} → {checked})"
                    )
            for p, r in zip(use, residues):
                residue_files.setdefault(p, ResidueFile(spec.id, p, {}, series.config)).residues[L] = r
            series.add(SeriesEntry(L, value))
            logger.info(f"✅ {spec.id} L={L}: {value}")
    except Exception as e:
        logger.error(f"❌ Enumeração de {spec.id} interrompida: {e}", exc_info=True)
        raise
    finally:
        if residue_dir is not None:
            for p, rf in residue_files.items():
                write_residues(rf, Path(residue_dir) / f"{spec.id}.{p}.residues")
    return series
