"""
Hash perfeito mínimo Φ(Σ) = Φ_L(Σ_L) + Φ_R(Σ_R) sobre assinaturas.

As duas tabelas são densas, indexadas pelo valor empacotado de cada
metade; padrões inválidos guardam -1.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from core.errors import MalformedSignatureError
from core.motzkin import DOWN, FLAT, UP, tables_for
from core.signature import EdgeState, Signature, check_width
from utils.logger import logger

SENTINEL = -1

_LEFT_STATE = {FLAT: EdgeState.EMPTY, UP: EdgeState.LOWER, DOWN: EdgeState.UPPER}
# a metade direita é lida de cima para baixo e espelhada
_RIGHT_STATE = {FLAT: EdgeState.EMPTY, UP: EdgeState.UPPER, DOWN: EdgeState.LOWER}


def _paths(n: int, start: int) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """Todos os caminhos de n passos a partir de start, em ordem ∘ < ( < )."""
    path: List[int] = []

    def walk(h: int):
        if len(path) == n:
            yield tuple(path), h
            return
        for step, delta in ((FLAT, 0), (UP, 1), (DOWN, -1)):
            if h + delta < 0:
                continue
            path.append(step)
            yield from walk(h + delta)
            path.pop()

    yield from walk(start)


@dataclass
class HashFunction:
    L: int
    width: int
    divider: int
    start_height: int
    offsets: List[int]
    phi_left: np.ndarray
    phi_right: np.ndarray
    lefts: Dict[int, np.ndarray] = field(repr=False)
    rights: Dict[int, np.ndarray] = field(repr=False)

    @property
    def total(self) -> int:
        return self.offsets[-1]

    @property
    def left_mask(self) -> int:
        return (1 << (2 * self.divider)) - 1

    def index_of(self, sig: Signature) -> int:
        """Índice base 1 da assinatura."""
        if sig.width != self.width or sig.start_height != self.start_height:
            raise MalformedSignatureError(
                f"Assinatura {sig} não pertence a W={self.width}, início {self.start_height}"
            )
        left = self.phi_left[sig.bits & self.left_mask]
        right = self.phi_right[sig.bits >> (2 * self.divider)]
        if left == SENTINEL or right == SENTINEL:
            raise MalformedSignatureError(f"Metade inválida em {sig}")
        return int(left + right)

    def slots(self, words: np.ndarray) -> np.ndarray:
        """Versão vetorizada de index_of, base 0 (posição no vetor de contagens)."""
        words = np.asarray(words, dtype=np.int64)
        left = self.phi_left[words & np.int64(self.left_mask)]
        right = self.phi_right[words >> np.int64(2 * self.divider)]
        if np.any(left == SENTINEL) or np.any(right == SENTINEL):
            raise MalformedSignatureError("Palavra fora do domínio do hash")
        return left + right - 1

    def words(self) -> np.ndarray:
        """Todas as assinaturas empacotadas, na ordem dos índices."""
        chunks = []
        shift = np.int64(2 * self.divider)
        for h in sorted(self.lefts):
            lefts, rights = self.lefts[h], self.rights.get(h)
            if rights is None or not len(lefts) or not len(rights):
                continue
            chunks.append((lefts[:, None] | (rights[None, :] << shift)).ravel())
        if not chunks:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate(chunks)

    def signature(self, index: int) -> Signature:
        """Inverso de index_of (índice base 1)."""
        if not 1 <= index <= self.total:
            raise IndexError(f"Índice {index} fora de 1..{self.total}")
        h = max(i for i in range(len(self.offsets) - 1) if self.offsets[i] < index)
        local = index - self.offsets[h] - 1
        rights = self.rights[h]
        left = int(self.lefts[h][local // len(rights)])
        right = int(rights[local % len(rights)])
        return Signature(self.width, left | (right << (2 * self.divider)), self.start_height)


def build_hash(L: int, start_height: int = 1, l_h: Optional[int] = None) -> HashFunction:
    """
    Constrói Φ para assinaturas de largura W = L + 1.

    Args:
        L: Tamanho do domínio
        start_height: 1 para caminhadas, 0 para polígonos
        l_h: Divisor do hash; padrão ⌊W/2⌋

    Returns:
        HashFunction com tabelas densas de 4^m e 4^n entradas
    """
    width = check_width(L + 1)
    if start_height not in (0, 1):
        raise ValueError("start_height deve ser 0 ou 1")
    m = width // 2 if l_h is None else l_h
    if not 0 <= m <= width:
        raise ValueError(f"Divisor {m} fora de 0..{width}")
    n = width - m
    tables = tables_for(max(width, 1))

    logger.debug(f"⚙️ Hash: W={width}, m={m}, n={n}, início={start_height}")
    phi_left = np.full(1 << (2 * m), SENTINEL, dtype=np.int64)
    phi_right = np.full(1 << (2 * n), SENTINEL, dtype=np.int64)

    max_h = min(m + start_height, n)
    offsets = [0]
    for h in range(max_h + 1):
        offsets.append(offsets[-1] + tables.count(start_height, m, h) * tables.count(0, n, h))

    lefts: Dict[int, List[int]] = {h: [] for h in range(max_h + 1)}
    for path, h in _paths(m, start_height):
        if h > max_h:
            continue
        word = 0
        for i, step in enumerate(path):
            word |= int(_LEFT_STATE[step]) << (2 * i)
        rank = len(lefts[h])
        phi_left[word] = offsets[h] + rank * tables.count(0, n, h)
        lefts[h].append(word)

    rights: Dict[int, List[int]] = {h: [] for h in range(max_h + 1)}
    for path, h in _paths(n, 0):
        if h > max_h:
            continue
        word = 0
        for j, step in enumerate(path):
            word |= int(_RIGHT_STATE[step]) << (2 * (n - 1 - j))
        rights[h].append(word)
        phi_right[word] = len(rights[h])

    hf = HashFunction(
        L=L,
        width=width,
        divider=m,
        start_height=start_height,
        offsets=offsets,
        phi_left=phi_left,
        phi_right=phi_right,
        lefts={h: np.array(v, dtype=np.int64) for h, v in lefts.items()},
        rights={h: np.array(v, dtype=np.int64) for h, v in rights.items()},
    )
    logger.debug(f"✅ Hash pronto: {hf.total} assinaturas")
    return hf
