"""
Assinaturas da fronteira da matriz de transferência.

Cada aresta cortada pela linha de fronteira guarda um de três estados,
empacotados em 2 bits (aresta 0, a de baixo, nos bits menos
significativos). Lida de baixo para cima, a assinatura é um caminho de
Motzkin: "(" sobe, ")" desce, ∘ fica no mesmo nível. Caminhadas começam
na altura 1 (a ponta livre é um ")" excedente); polígonos na altura 0.
"""
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple

from config import MAX_WIDTH
from core.errors import MalformedSignatureError, WidthLimitError
from core.motzkin import DOWN, FLAT, UP


class EdgeState(IntEnum):
    EMPTY = 0b00
    UPPER = 0b01  # ")"
    LOWER = 0b10  # "("

    @property
    def glyph(self) -> str:
        return _GLYPHS[self]


_GLYPHS = {EdgeState.EMPTY: "∘", EdgeState.LOWER: "(", EdgeState.UPPER: ")"}
_FROM_GLYPH = {"∘": EdgeState.EMPTY, "o": EdgeState.EMPTY, "(": EdgeState.LOWER, ")": EdgeState.UPPER}
_STEP_OF = {EdgeState.EMPTY: FLAT, EdgeState.LOWER: UP, EdgeState.UPPER: DOWN}
# Ordem lexicográfica ∘ < ( < ), independente dos códigos de bits
ORDER_CODE = {EdgeState.EMPTY: 0, EdgeState.LOWER: 1, EdgeState.UPPER: 2}


def check_width(width: int) -> int:
    if width < 0:
        raise ValueError("Largura negativa")
    if width > MAX_WIDTH:
        raise WidthLimitError(f"Largura {width} excede o limite de {MAX_WIDTH} arestas")
    return width


def pack(states: Sequence[int]) -> int:
    """Empacota estados em uma palavra (aresta 0 nos bits baixos)."""
    word = 0
    for i, state in enumerate(states):
        word |= int(state) << (2 * i)
    return word


def unpack(word: int, width: int) -> Tuple[EdgeState, ...]:
    states = []
    for i in range(width):
        code = (word >> (2 * i)) & 0b11
        if code == 0b11:
            raise MalformedSignatureError(f"Código 11 na aresta {i}")
        states.append(EdgeState(code))
    if word >> (2 * width):
        raise MalformedSignatureError("Bits acima da largura da assinatura")
    return tuple(states)


def heights(states: Sequence[int], start_height: int) -> Tuple[int, ...]:
    """Perfil de alturas h_0..h_W do caminho de Motzkin."""
    profile = [start_height]
    h = start_height
    for state in states:
        if state == EdgeState.LOWER:
            h += 1
        elif state == EdgeState.UPPER:
            h -= 1
        profile.append(h)
    return tuple(profile)


def validate(states: Sequence[int], start_height: int) -> None:
    profile = heights(states, start_height)
    if min(profile) < 0:
        raise MalformedSignatureError("Assinatura desce abaixo da altura 0")
    if profile[-1] != 0:
        raise MalformedSignatureError(f"Assinatura termina na altura {profile[-1]}, não 0")


def to_steps(states: Iterable[int]) -> Tuple[int, ...]:
    return tuple(_STEP_OF[EdgeState(s)] for s in states)


def mirror_reverse(states: Sequence[int]) -> Tuple[EdgeState, ...]:
    """Inverte a ordem e troca ( por ); a metade direita vira caminho de 0 até h."""
    swap = {EdgeState.EMPTY: EdgeState.EMPTY, EdgeState.LOWER: EdgeState.UPPER, EdgeState.UPPER: EdgeState.LOWER}
    return tuple(swap[EdgeState(s)] for s in reversed(states))


@dataclass(frozen=True)
class Signature:
    width: int
    bits: int
    start_height: int = 1

    def __post_init__(self):
        check_width(self.width)
        if self.start_height not in (0, 1):
            raise ValueError("start_height deve ser 0 ou 1")
        validate(unpack(self.bits, self.width), self.start_height)

    @classmethod
    def from_states(cls, states: Sequence[int], start_height: int = 1) -> "Signature":
        return cls(len(states), pack(states), start_height)

    @classmethod
    def from_text(cls, text: str, start_height: int = 1) -> "Signature":
        """Lê glifos ∘ ( ) (ou o), ignorando o divisor |."""
        try:
            states = [_FROM_GLYPH[ch] for ch in text if ch != "|"]
        except KeyError as e:
            raise MalformedSignatureError(f"Glifo inválido: {e}") from None
        return cls.from_states(states, start_height)

    @property
    def states(self) -> Tuple[EdgeState, ...]:
        return unpack(self.bits, self.width)

    def __getitem__(self, pos: int) -> EdgeState:
        if not 0 <= pos < self.width:
            raise IndexError(pos)
        return EdgeState((self.bits >> (2 * pos)) & 0b11)

    def render(self, divider: Optional[int] = None) -> str:
        glyphs = [s.glyph for s in self.states]
        if divider is not None:
            glyphs.insert(divider, "|")
        return "".join(glyphs)

    def __str__(self) -> str:
        return self.render()


def matching_arc(sig: Signature, pos: int) -> int:
    """
    Posição do par de um extremo de arco pela varredura com contador.

    Args:
        sig: Assinatura
        pos: Aresta com "(" ou ")" que não seja a ponta livre

    Returns:
        Índice da aresta parceira
    """
    state = sig[pos]
    if state == EdgeState.EMPTY:
        raise MalformedSignatureError(f"Aresta {pos} está vazia")
    step, same = (1, EdgeState.LOWER) if state == EdgeState.LOWER else (-1, EdgeState.UPPER)
    depth = 0
    j = pos
    while 0 <= j < sig.width:
        current = sig[j]
        if current == same:
            depth += 1
        elif current != EdgeState.EMPTY:
            depth -= 1
            if depth == 0:
                return j
        j += step
    raise MalformedSignatureError(f"Extremo em {pos} sem par em {sig}")


def free_end_position(sig: Signature) -> int:
    """Primeiro retorno do caminho à altura 0."""
    if sig.start_height != 1:
        raise MalformedSignatureError("Polígonos não têm ponta livre")
    profile = heights(sig.states, 1)
    return profile.index(0, 1) - 1


class SplitHalves(NamedTuple):
    height: int
    left: Tuple[EdgeState, ...]
    right: Tuple[EdgeState, ...]


def split_height(sig: Signature, divider: int) -> SplitHalves:
    """
    Corta a assinatura no divisor.

    Returns:
        Altura h após `divider` passos, a metade esquerda como está e a
        direita invertida e espelhada (caminho de 0 até h).
    """
    if not 0 <= divider <= sig.width:
        raise ValueError(f"Divisor {divider} fora de 0..{sig.width}")
    states = sig.states
    h = heights(states, sig.start_height)[divider]
    return SplitHalves(h, states[:divider], mirror_reverse(states[divider:]))


def single(width: int, entries: Iterable[Tuple[int, int]], start_height: int) -> Signature:
    """Assinatura com os estados dados em (posição, estado) e o resto vazio."""
    states = [EdgeState.EMPTY] * width
    for pos, state in entries:
        states[pos] = EdgeState(state)
    return Signature.from_states(states, start_height)
