"""
Registro de problemas e geometria das varreduras.

Cada problema sabe transformar o domínio de tamanho L em uma sequência
de passos para a matriz de transferência: movimentos de dobra (Move),
deslocamentos da fronteira (Shift, só na rede quadrada) e filtros
(Require, variantes que passam pelo vértice do topo do triângulo).
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Set, Tuple, Union

from config import LAMBDA_HEX, LAMBDA_SQUARE
from core.errors import UnknownProblemError
from core.signature import EdgeState, Signature, check_width, single

SQUARE, HEXAGONAL = "square", "hexagonal"
SAW_CROSSING, SAW_SPANNING, SAP = "saw-crossing", "saw-spanning", "sap"

LOWER, UPPER = EdgeState.LOWER, EdgeState.UPPER


@dataclass(frozen=True)
class Move:
    """Troca das arestas (position, position+1) por novas arestas de saída."""

    position: int
    lower_out: bool = True
    upper_out: bool = True
    link: bool = True
    pass_both: bool = True
    column: int = 0


@dataclass(frozen=True)
class Shift:
    column: int = 0


@dataclass(frozen=True)
class Require:
    """Descarta assinaturas com a aresta `position` vazia."""

    position: int
    column: int = 0


Step = Union[Move, Shift, Require]


@dataclass(frozen=True)
class Schedule:
    width: int
    start_height: int
    steps: Tuple[Step, ...]
    initial: Tuple[Signature, ...]
    accepting: Tuple[Signature, ...]

    @property
    def moves(self) -> List[Move]:
        return [s for s in self.steps if isinstance(s, Move)]


FacePredicate = Callable[[int, int], bool]


def _hex_schedule(
    L: int,
    face: FacePredicate,
    ncols: int,
    virtual: Set[Tuple[int, int, str]],
    start_height: int,
    initial: List[List[Tuple[int, int]]],
    accepting: List[List[Tuple[int, int]]],
    requires: Optional[Dict[int, List[int]]] = None,
    last_column: Optional[int] = None,
) -> Schedule:
    """
    Movimentos da rede hexagonal a partir do conjunto de faces (tijolos).

    Cada coluna c é percorrida de cima para baixo (k = L-1..0); o par
    (k, k+1) ganha os vértices u (embaixo) e v (em cima), ligados pelo
    degrau quando há face adjacente. Vértices ausentes deixam a entrada
    passar; pares sem vértice algum são movimentos virtuais e somem.
    """
    F = face
    width = L + 1
    requires = requires or {}
    last = ncols - 1 if last_column is None else last_column
    steps: List[Step] = []
    for c in range(last + 1):
        for k in range(L - 1, -1, -1):
            rung = F(c, k + 1) or F(c - 1, k + 1)
            ou = (F(c, k + 1) or F(c - 1, k)) if k >= 1 else F(c, 1)
            ov = (F(c, k + 1) or F(c, k + 2)) if k <= L - 2 else F(c, L)
            inu = (F(c - 1, k) or F(c - 1, k + 1)) if k >= 1 else F(c - 1, 1)
            inv = (F(c, k + 2) or F(c - 1, k + 1)) if k <= L - 2 else F(c - 1, L)
            pu = rung or ou or inu
            pv = rung or ov or inv
            if (c, k, "u") in virtual:
                ou = pu = True
            if (c, k, "v") in virtual:
                ov = pv = True
            if not (pu or pv):
                continue
            steps.append(
                Move(
                    position=k,
                    lower_out=ou if pu else True,
                    upper_out=ov if pv else True,
                    link=rung,
                    pass_both=True,
                    column=c,
                )
            )
        for pos in requires.get(c, []):
            steps.append(Require(pos, column=c))
    return Schedule(
        width=width,
        start_height=start_height,
        steps=tuple(steps),
        initial=tuple(single(width, e, start_height) for e in initial),
        accepting=tuple(single(width, e, start_height) for e in accepting),
    )


def rhombus_face(L: int) -> FacePredicate:
    return lambda c, k: 0 <= c < L and 1 <= k <= L


def triangle_face(L: int) -> FacePredicate:
    return lambda c, k: 0 <= c <= k - 1 and 1 <= k <= L


def _row_shift(k: int) -> int:
    return (k - 1) // 2


def hex_square_face(L: int) -> FacePredicate:
    return lambda c, k: 1 <= k <= L and _row_shift(k) <= c < _row_shift(k) + L


def _rhombus(path: str) -> Callable[[int], Schedule]:
    def build(L: int) -> Schedule:
        F = rhombus_face(L)
        if path == SAW_CROSSING:
            return _hex_schedule(L, F, L + 1, {(L, 0, "u")}, 1, [[(L, UPPER)]], [[(0, UPPER)]])
        if path == SAW_SPANNING:
            virtual = {(L, k, "v") for k in range(L)}
            return _hex_schedule(
                L, F, L + 1, virtual, 1,
                [[(p, UPPER)] for p in range(L)],
                [[(p, UPPER)] for p in range(1, L + 1)],
            )
        return _hex_schedule(
            L, F, L + 1, {(L, 0, "u"), (L, 0, "v")}, 0,
            [[(L - 1, LOWER), (L, UPPER)]],
            [[(0, LOWER), (1, UPPER)]],
        )

    return build


def _triangle(path: str, through_top: bool) -> Callable[[int], Schedule]:
    def build(L: int) -> Schedule:
        F = triangle_face(L)
        requires = {0: [0]} if through_top else None
        if path == SAW_CROSSING:
            return _hex_schedule(
                L, F, L + 1, {(L, L - 1, "v")}, 1,
                [[(L, UPPER)]], [[(L, UPPER)]], requires,
            )
        arc = [(L - 1, LOWER), (L, UPPER)]
        return _hex_schedule(L, F, L + 1, set(), 0, [arc], [arc], requires, last_column=L - 1)

    return build


def _hex_square(L: int) -> Schedule:
    F = hex_square_face(L)
    return _hex_schedule(
        L, F, L + 1 + _row_shift(L), {(L, 0, "u")}, 1, [[(L, UPPER)]], [[(0, UPPER)]]
    )


def _square(path: str) -> Callable[[int], Schedule]:
    """
    Rede quadrada: colunas x = 0..L, um vértice por movimento (k = L..0).

    A fronteira tem L + 2 arestas; ao fim de cada coluna ela desce uma
    posição (Shift), exigindo a aresta 0 vazia.
    """

    def build(L: int) -> Schedule:
        width = L + 2
        start_height = 0 if path == SAP else 1
        steps: List[Step] = []
        for x in range(L + 1):
            for k in range(L, -1, -1):
                if path == SAP and (x, k) in ((0, L), (L, 0)):
                    continue
                lo, hi = k > 0, x < L
                if path == SAW_CROSSING and (x, k) == (L, 0):
                    lo = True
                if path == SAW_SPANNING and x == L:
                    hi = True
                steps.append(Move(k, lo, hi, link=True, pass_both=False, column=x))
            if x < L:
                steps.append(Shift(column=x))
        if path == SAW_CROSSING:
            initial, accepting = [[(L, UPPER)]], [[(0, UPPER)]]
        elif path == SAW_SPANNING:
            initial = [[(y, UPPER)] for y in range(L + 1)]
            accepting = [[(y + 1, UPPER)] for y in range(L + 1)]
        else:
            initial, accepting = [[(L, LOWER), (L + 1, UPPER)]], [[(0, LOWER), (1, UPPER)]]
        return Schedule(
            width=width,
            start_height=start_height,
            steps=tuple(steps),
            initial=tuple(single(width, e, start_height) for e in initial),
            accepting=tuple(single(width, e, start_height) for e in accepting),
        )

    return build


@dataclass(frozen=True)
class ProblemSpec:
    id: str
    lattice: str
    domain: str
    path: str
    description: str
    size_exponent: int
    growth: float
    through_top: bool = False
    builder: Callable[[int], Schedule] = field(default=None, repr=False, compare=False)
    face_predicate: Optional[Callable[[int], FacePredicate]] = field(default=None, repr=False, compare=False)

    @property
    def start_height(self) -> int:
        return 0 if self.path == SAP else 1

    @property
    def is_walk(self) -> bool:
        return self.path != SAP

    def width(self, L: int) -> int:
        return L + 2 if self.lattice == SQUARE else L + 1

    def schedule(self, L: int) -> Schedule:
        if L < 1:
            raise ValueError(f"L deve ser >= 1 (recebido {L})")
        check_width(self.width(L))
        return self.builder(L)

    def faces(self, L: int) -> FrozenSet[Tuple[int, int]]:
        """Tijolos (c, k) do domínio hexagonal; vazio na rede quadrada."""
        if self.face_predicate is None:
            return frozenset()
        F = self.face_predicate(L)
        return frozenset((c, k) for k in range(1, L + 1) for c in range(0, 2 * L + 1) if F(c, k))

    def vertex_count(self, L: int) -> int:
        if self.lattice == SQUARE:
            return (L + 1) ** 2
        if self.domain == "triangle":
            return L * L + 4 * L + 1
        return 2 * L * L + 4 * L


def _spec(pid, lattice, domain, path, description, builder, faces=None, through_top=False) -> ProblemSpec:
    if lattice == SQUARE:
        exponent, growth = 1, LAMBDA_SQUARE
    else:
        exponent, growth = (1 if domain == "triangle" else 2), LAMBDA_HEX
    return ProblemSpec(
        id=pid,
        lattice=lattice,
        domain=domain,
        path=path,
        description=description,
        size_exponent=exponent,
        growth=growth,
        through_top=through_top,
        builder=builder,
        face_predicate=faces,
    )


PROBLEMS: Dict[str, ProblemSpec] = {
    p.id: p
    for p in (
        _spec("sq-saw-crossing", SQUARE, "square", SAW_CROSSING,
              "SAWs crossing a square, corner to opposite corner", _square(SAW_CROSSING)),
        _spec("sq-saw-spanning", SQUARE, "square", SAW_SPANNING,
              "SAWs spanning a square, left side to right side", _square(SAW_SPANNING)),
        _spec("sq-sap-crossing", SQUARE, "square", SAP,
              "SAPs through two opposite corners of a square", _square(SAP)),
        _spec("hex-rhombus-saw", HEXAGONAL, "rhombus", SAW_CROSSING,
              "SAWs crossing a rhombus of the hexagonal lattice", _rhombus(SAW_CROSSING), rhombus_face),
        _spec("hex-rhombus-span", HEXAGONAL, "rhombus", SAW_SPANNING,
              "SAWs spanning a rhombus of the hexagonal lattice", _rhombus(SAW_SPANNING), rhombus_face),
        _spec("hex-rhombus-sap", HEXAGONAL, "rhombus", SAP,
              "SAPs through two opposite corners of a rhombus", _rhombus(SAP), rhombus_face),
        _spec("hex-triangle-saw", HEXAGONAL, "triangle", SAW_CROSSING,
              "SAWs between the two top corners of a triangle", _triangle(SAW_CROSSING, False), triangle_face),
        _spec("hex-triangle-saw-top", HEXAGONAL, "triangle", SAW_CROSSING,
              "SAWs between the top corners of a triangle through its tip",
              _triangle(SAW_CROSSING, True), triangle_face, through_top=True),
        _spec("hex-triangle-sap", HEXAGONAL, "triangle", SAP,
              "SAPs through the two top corners of a triangle", _triangle(SAP, False), triangle_face),
        _spec("hex-triangle-sap-top", HEXAGONAL, "triangle", SAP,
              "SAPs through the top corners of a triangle and its tip",
              _triangle(SAP, True), triangle_face, through_top=True),
        _spec("hex-square-saw", HEXAGONAL, "square", SAW_CROSSING,
              "SAWs crossing a square domain of the hexagonal lattice", _hex_square, hex_square_face),
    )
}


def get_problem(problem_id: str) -> ProblemSpec:
    try:
        return PROBLEMS[problem_id]
    except KeyError:
        raise UnknownProblemError(
            f"Problema desconhecido: {problem_id!r}. Disponíveis: {', '.join(sorted(PROBLEMS))}"
        ) from None
