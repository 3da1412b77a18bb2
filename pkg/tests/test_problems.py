import pytest

from core.errors import UnknownProblemError, WidthLimitError
from core.oracle import build_domain_graph
from core.problems import HEXAGONAL, PROBLEMS, SAP, SQUARE, Move, Require, Shift, get_problem


def test_registry_ids():
    assert sorted(PROBLEMS) == sorted([
        "sq-saw-crossing", "sq-saw-spanning", "sq-sap-crossing",
        "hex-rhombus-saw", "hex-rhombus-span", "hex-rhombus-sap",
        "hex-triangle-saw", "hex-triangle-saw-top", "hex-triangle-sap", "hex-triangle-sap-top",
        "hex-square-saw",
    ])


def test_unknown_problem():
    with pytest.raises(UnknownProblemError):
        get_problem("hex-circle-saw")
    with pytest.raises(KeyError):
        get_problem("")


def test_widths_and_start_heights():
    assert get_problem("sq-saw-crossing").width(5) == 7
    assert get_problem("hex-rhombus-saw").width(5) == 6
    assert get_problem("hex-rhombus-sap").start_height == 0
    assert get_problem("hex-triangle-saw").start_height == 1
    assert get_problem("sq-sap-crossing").path == SAP


def test_size_exponents():
    assert get_problem("hex-triangle-saw").size_exponent == 1
    assert get_problem("sq-saw-crossing").size_exponent == 1
    assert get_problem("hex-rhombus-saw").size_exponent == 2
    assert get_problem("hex-square-saw").size_exponent == 2


@pytest.mark.parametrize("problem", sorted(PROBLEMS))
@pytest.mark.parametrize("L", range(1, 11))
def test_vertex_count_matches_domain_graph(problem, L):
    assert build_domain_graph(problem, L).vertex_count == get_problem(problem).vertex_count(L)


def test_vertex_count_formulas():
    for L in range(1, 11):
        assert get_problem("hex-triangle-saw").vertex_count(L) == L * L + 4 * L + 1
        # convenção do grafo de tijolos
        assert get_problem("hex-rhombus-saw").vertex_count(L) == 2 * L * L + 4 * L
        assert get_problem("hex-square-saw").vertex_count(L) == 2 * L * L + 4 * L
        assert get_problem("sq-saw-crossing").vertex_count(L) == (L + 1) ** 2
    assert [get_problem("hex-square-saw").vertex_count(L) for L in (1, 2, 3)] == [6, 16, 30]


def test_schedule_shapes():
    square = get_problem("sq-saw-crossing").schedule(3)
    assert square.width == 5
    assert any(isinstance(s, Shift) for s in square.steps)
    assert all(0 <= m.position < square.width - 1 for m in square.moves)

    top = get_problem("hex-triangle-sap-top").schedule(3)
    assert any(isinstance(s, Require) for s in top.steps)
    plain = get_problem("hex-triangle-sap").schedule(3)
    assert not any(isinstance(s, Require) for s in plain.steps)

    rhombus = get_problem("hex-rhombus-saw").schedule(4)
    assert rhombus.start_height == 1
    assert rhombus.initial and rhombus.accepting
    assert all(isinstance(m, Move) for m in rhombus.moves)


def test_faces_only_on_hexagonal():
    assert get_problem("sq-saw-crossing").faces(3) == frozenset()
    assert len(get_problem("hex-rhombus-saw").faces(3)) == 9
    assert get_problem("hex-rhombus-saw").lattice == HEXAGONAL
    assert get_problem("sq-sap-crossing").lattice == SQUARE


def test_schedule_limits():
    with pytest.raises(ValueError):
        get_problem("hex-rhombus-saw").schedule(0)
    with pytest.raises(WidthLimitError):
        get_problem("hex-rhombus-saw").schedule(31)
