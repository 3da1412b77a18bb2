"""
Contagem por busca em profundidade sobre o grafo explícito do domínio.

Usada só para certificar a varredura em tamanhos pequenos. A rede
hexagonal é desenhada como parede de tijolos: o tijolo (c, k) ocupa
x ∈ [2c-k, 2c-k+2], y ∈ [k-1, k], com seis vértices, as arestas
horizontais de cima e de baixo e as verticais nas duas pontas.
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Set, Tuple, Union

from config import DFS_BUDGET
from core.errors import SearchBudgetError
from core.problems import HEXAGONAL, SAP, SAW_SPANNING, ProblemSpec, get_problem

Point = Tuple[int, int]


@dataclass
class DomainGraph:
    adjacency: Dict[Point, Set[Point]] = field(default_factory=dict)
    sources: FrozenSet[Point] = frozenset()
    targets: FrozenSet[Point] = frozenset()
    required: FrozenSet[Point] = frozenset()

    def add_edge(self, u: Point, v: Point) -> None:
        self.adjacency.setdefault(u, set()).add(v)
        self.adjacency.setdefault(v, set()).add(u)

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(len(n) for n in self.adjacency.values()) // 2


def _brick_origin(c: int, k: int) -> Point:
    return 2 * c - k, k - 1


def _add_brick(graph: DomainGraph, c: int, k: int) -> None:
    x0, y0 = _brick_origin(c, k)
    for dx in range(2):
        graph.add_edge((x0 + dx, y0), (x0 + dx + 1, y0))
        graph.add_edge((x0 + dx, y0 + 1), (x0 + dx + 1, y0 + 1))
    graph.add_edge((x0, y0), (x0, y0 + 1))
    graph.add_edge((x0 + 2, y0), (x0 + 2, y0 + 1))


def _hex_graph(problem: ProblemSpec, L: int) -> DomainGraph:
    graph = DomainGraph()
    faces = problem.faces(L)
    for c, k in sorted(faces):
        _add_brick(graph, c, k)

    top = sorted(c for c, k in faces if k == L)
    bottom = sorted(c for c, k in faces if k == 1)
    top_left = _brick_origin(top[0], L)
    start = (top_left[0], L)

    if problem.domain == "triangle":
        top_right = _brick_origin(top[-1], L)
        end = (top_right[0] + 2, L)
        graph.required = frozenset({(0, 0)}) if problem.through_top else frozenset()
    else:
        bottom_right = _brick_origin(bottom[-1], 1)
        end = (bottom_right[0] + 2, 0)

    if problem.path == SAW_SPANNING:
        # canto inferior esquerdo dos tijolos da coluna 0, superior direito da última
        graph.sources = frozenset(_brick_origin(0, k + 1) for k in range(L))
        graph.targets = frozenset(
            (_brick_origin(L - 1, k + 1)[0] + 2, k + 1) for k in range(L)
        )
    else:
        graph.sources, graph.targets = frozenset({start}), frozenset({end})
    return graph


def _square_graph(problem: ProblemSpec, L: int) -> DomainGraph:
    graph = DomainGraph()
    for x in range(L + 1):
        for y in range(L + 1):
            if x < L:
                graph.add_edge((x, y), (x + 1, y))
            if y < L:
                graph.add_edge((x, y), (x, y + 1))
    if problem.path == SAW_SPANNING:
        graph.sources = frozenset((0, y) for y in range(L + 1))
        graph.targets = frozenset((L, y) for y in range(L + 1))
    else:
        graph.sources, graph.targets = frozenset({(0, L)}), frozenset({(L, 0)})
    return graph


def build_domain_graph(problem: Union[str, ProblemSpec], L: int) -> DomainGraph:
    spec = get_problem(problem) if isinstance(problem, str) else problem
    if L < 1:
        raise ValueError("L deve ser >= 1")
    if spec.lattice == HEXAGONAL:
        return _hex_graph(spec, L)
    return _square_graph(spec, L)


class _Search:
    def __init__(self, graph: DomainGraph, budget: int):
        self.graph = graph
        self.budget = budget
        self.steps = 0
        self.visited: Set[Point] = set()

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise SearchBudgetError(f"Busca excedeu {self.budget} passos")

    def _covers_required(self) -> bool:
        return self.graph.required <= self.visited

    def walks(self, v: Point) -> int:
        self._tick()
        total = 0
        if v in self.graph.targets and self._covers_required():
            total += 1
            if len(self.graph.targets) == 1:
                return total
        for w in self.graph.adjacency[v]:
            if w not in self.visited:
                self.visited.add(w)
                total += self.walks(w)
                self.visited.remove(w)
        return total

    def cycles(self, origin: Point, v: Point, length: int) -> int:
        """Cada polígono aparece duas vezes (uma por sentido)."""
        self._tick()
        total = 0
        for w in self.graph.adjacency[v]:
            if w == origin and length >= 3:
                if self.graph.targets <= self.visited and self._covers_required():
                    total += 1
            elif w not in self.visited:
                self.visited.add(w)
                total += self.cycles(origin, w, length + 1)
                self.visited.remove(w)
        return total


def dfs_count(problem: Union[str, ProblemSpec], L: int, budget: Optional[int] = None) -> int:
    """
    Conta caminhos (ou polígonos) autoevitantes por força bruta.

    Args:
        problem: Identificador ou ProblemSpec
        L: Tamanho (pequeno)
        budget: Máximo de passos da busca

    Returns:
        Contagem exata
    """
    spec = get_problem(problem) if isinstance(problem, str) else problem
    graph = build_domain_graph(spec, L)
    search = _Search(graph, budget if budget is not None else DFS_BUDGET)
    if spec.path == SAP:
        (origin,) = graph.sources
        search.visited.add(origin)
        return search.cycles(origin, origin, 1) // 2
    total = 0
    for s in sorted(graph.sources):
        search.visited = {s}
        total += search.walks(s)
    return total
