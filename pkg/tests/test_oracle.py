import pytest

from core.errors import SearchBudgetError
from core.oracle import build_domain_graph, dfs_count
from core.problems import PROBLEMS
from core.tm_engine import sweep

ORACLE_L_MAX = 5
LARGE_BUDGET = 10 ** 10

ORACLE_RANGE = {
    "sq-saw-crossing": 3,
    "sq-saw-spanning": 2,
    "sq-sap-crossing": 3,
    "hex-rhombus-saw": 3,
    "hex-rhombus-span": 2,
    "hex-rhombus-sap": 3,
    "hex-triangle-saw": 5,
    "hex-triangle-saw-top": 5,
    "hex-triangle-sap": 5,
    "hex-triangle-sap-top": 5,
    "hex-square-saw": 3,
}


def test_worked_counts():
    assert dfs_count("hex-triangle-saw", 2) == 7
    assert dfs_count("sq-saw-crossing", 1) == 2
    assert dfs_count("hex-rhombus-span", 2) == 50


@pytest.mark.parametrize("problem", sorted(PROBLEMS))
def test_oracle_matches_published_counts(problem, golden):
    series = golden(problem)
    for L in range(1, ORACLE_RANGE[problem] + 1):
        assert dfs_count(problem, L) == series.value_at(L)


@pytest.mark.parametrize("problem", sorted(PROBLEMS))
def test_oracle_matches_sweep(problem, prime):
    for L in range(1, ORACLE_RANGE[problem] + 1):
        assert sweep(problem, L, prime) == dfs_count(problem, L)


@pytest.mark.slow
@pytest.mark.parametrize("problem", sorted(p for p in PROBLEMS if ORACLE_RANGE[p] < ORACLE_L_MAX))
def test_oracle_up_to_size_five(problem, golden, prime):
    for L in range(ORACLE_RANGE[problem] + 1, ORACLE_L_MAX + 1):
        count = dfs_count(problem, L, budget=LARGE_BUDGET)
        assert count == golden(problem).value_at(L)
        assert sweep(problem, L, prime) == count % prime


def test_search_budget():
    with pytest.raises(SearchBudgetError):
        dfs_count("sq-saw-crossing", 4, budget=100)


def test_domain_graph_endpoints():
    graph = build_domain_graph("hex-triangle-saw-top", 3)
    assert graph.required == frozenset({(0, 0)})
    assert len(graph.sources) == len(graph.targets) == 1
    spanning = build_domain_graph("sq-saw-spanning", 3)
    assert len(spanning.sources) == len(spanning.targets) == 4
    with pytest.raises(ValueError):
        build_domain_graph("sq-saw-crossing", 0)
