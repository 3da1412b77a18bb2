"""
Aritmética de caminhos de Motzkin: números, contagens por altura e
ranqueamento lexicográfico (∘ < ( < ).
"""
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from core.errors import CountOverflowError, MalformedSignatureError

FLAT, UP, DOWN = 0, 1, 2
STEP_DELTA = {FLAT: 0, UP: 1, DOWN: -1}
STEP_GLYPHS = {"∘": FLAT, "o": FLAT, "(": UP, ")": DOWN}


def parse_steps(text: str) -> Tuple[int, ...]:
    """Converte "∘()" (ou "o()") em passos FLAT/UP/DOWN."""
    try:
        return tuple(STEP_GLYPHS[ch] for ch in text)
    except KeyError as e:
        raise MalformedSignatureError(f"Símbolo inválido no caminho: {e}") from None


def _check_width(value: int, bits: Optional[int]) -> int:
    if bits is not None and value >= 1 << bits:
        raise CountOverflowError(
            f"Contagem {value} excede {bits} bits; use precisão arbitrária"
        )
    return value


def motzkin_numbers(n_max: int, bits: Optional[int] = None) -> List[int]:
    """
    Números de Motzkin M_0..M_{n_max}.

    Args:
        n_max: Maior índice (>= 0)
        bits: Largura do acumulador; None para precisão arbitrária

    Returns:
        Lista [M_0, ..., M_{n_max}]
    """
    if n_max < 0:
        raise ValueError("n_max deve ser >= 0")
    numbers = [1, 1][: n_max + 1]
    for n in range(2, n_max + 1):
        total = (2 * n + 1) * numbers[n - 1] + 3 * (n - 1) * numbers[n - 2]
        value, rest = divmod(total, n + 2)
        assert rest == 0, "divisão inexata na recorrência de Motzkin"
        numbers.append(_check_width(value, bits))
    return numbers


class MotzkinTables:
    """
    Contagens de caminhos de n passos entre duas alturas sem descer de 0.

    between[n][a][b] vale para n <= n_max e alturas a, b <= n_max + 1,
    suficientes para caminhos que começam na altura 0 ou 1.
    """

    def __init__(self, n_max: int, bits: Optional[int] = 64):
        if n_max < 0:
            raise ValueError("n_max deve ser >= 0")
        self.n_max = n_max
        self.bits = bits
        self.max_height = n_max + 1
        self.between = self._build()

    def _build(self) -> List[List[List[int]]]:
        top = self.max_height
        table = [[[0] * (top + 1) for _ in range(top + 1)] for _ in range(self.n_max + 1)]
        for a in range(top + 1):
            row = [0] * (a + self.n_max + 2)
            row[a] = 1
            table[0][a][a] = 1
            for n in range(1, self.n_max + 1):
                nxt = [0] * len(row)
                for h, c in enumerate(row):
                    if not c:
                        continue
                    nxt[h] += c
                    if h + 1 < len(nxt):
                        nxt[h + 1] += c
                    if h > 0:
                        nxt[h - 1] += c
                row = nxt
                for b in range(top + 1):
                    table[n][a][b] = _check_width(row[b], self.bits)
        return table

    def count(self, start: int, n: int, end: int) -> int:
        """Número de caminhos de n passos da altura start até end."""
        if n < 0 or start < 0 or end < 0 or abs(start - end) > n:
            return 0
        if n > self.n_max or start > self.max_height or end > self.max_height:
            raise ValueError(f"Classe ({start}, {n}, {end}) fora da tabela n_max={self.n_max}")
        return self.between[n][start][end]

    @property
    def m0(self) -> List[List[int]]:
        """m0[n][h]: caminhos de n passos da altura 0 até h."""
        return [[self.between[n][0][h] for h in range(n + 1)] for n in range(self.n_max + 1)]

    @property
    def m1(self) -> List[List[int]]:
        """m1[n][h]: caminhos de n passos da altura 1 até h."""
        return [[self.between[n][1][h] for h in range(n + 2)] for n in range(self.n_max + 1)]

    def rank(self, path: Sequence[int], start_height: int) -> int:
        """
        Posição (base 1) do caminho na sua classe (início, comprimento, fim).

        Args:
            path: Passos FLAT/UP/DOWN
            start_height: Altura inicial

        Returns:
            Índice lexicográfico com ∘ < ( < )
        """
        n = len(path)
        end = final_height(path, start_height)
        index = 1
        h = start_height
        for i, step in enumerate(path):
            remaining = n - i - 1
            for smaller in range(step):
                nh = h + STEP_DELTA[smaller]
                if nh >= 0:
                    index += self.count(nh, remaining, end)
            h += STEP_DELTA[step]
        return index

    def unrank(self, start_height: int, n: int, end: int, index: int) -> Tuple[int, ...]:
        """Inverso de rank dentro da classe (start_height, n, end)."""
        total = self.count(start_height, n, end)
        if not 1 <= index <= total:
            raise IndexError(f"Índice {index} fora de 1..{total}")
        path = []
        h = start_height
        for i in range(n):
            remaining = n - i - 1
            for step in (FLAT, UP, DOWN):
                nh = h + STEP_DELTA[step]
                if nh < 0:
                    continue
                c = self.count(nh, remaining, end)
                if index <= c:
                    path.append(step)
                    h = nh
                    break
                index -= c
        return tuple(path)


def final_height(path: Sequence[int], start_height: int) -> int:
    """Altura final; rejeita caminhos que descem abaixo de 0."""
    h = start_height
    for step in path:
        if step not in STEP_DELTA:
            raise MalformedSignatureError(f"Passo inválido: {step!r}")
        h += STEP_DELTA[step]
        if h < 0:
            raise MalformedSignatureError("Caminho desce abaixo da altura 0")
    return h


@lru_cache(maxsize=8)
def tables_for(n_max: int) -> MotzkinTables:
    """Tabelas compartilhadas (imutáveis depois de construídas)."""
    return MotzkinTables(n_max)


def path_counts(start_height: int, n_max: int) -> List[List[int]]:
    """Tabela (n, h) de caminhos a partir da altura 0 ou 1."""
    if start_height not in (0, 1):
        raise ValueError("start_height deve ser 0 ou 1")
    tables = tables_for(n_max)
    return tables.m0 if start_height == 0 else tables.m1


def rank(path: Sequence[int], start_height: int) -> int:
    return tables_for(max(len(path), 1)).rank(path, start_height)


def unrank(start_height: int, n: int, end: int, index: int) -> Tuple[int, ...]:
    return tables_for(max(n, 1)).unrank(start_height, n, end, index)
