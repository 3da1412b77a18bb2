import pytest

from config import MIN_APPROXIMANTS, PREDICTION_ORDER
from core.errors import InsufficientTermsError
from core.exact_count import PREDICTED, Series, SeriesEntry
from core.analysis.prediction import extend_sequence, extend_series, predict_coefficients

ONE_APPROXIMANT = [((1, 1), -1)]


def _powers_of_two(L_max):
    return Series("toy", [SeriesEntry(L, 2 ** L) for L in range(1, L_max + 1)])


def test_exact_recurrence_extends_without_spread():
    terms, used, diagnostic = extend_sequence(
        [2 ** k for k in range(8)], 3, order=1, schedule=ONE_APPROXIMANT, min_approximants=1
    )
    assert used == 1 and diagnostic == ""
    assert [float(mean) for mean, _, _ in terms] == [256.0, 512.0, 1024.0]
    assert all(std == 0 and count == 1 for _, std, count in terms)


@pytest.mark.parametrize("on_ratios", [True, False])
def test_predict_coefficients(on_ratios):
    prediction = predict_coefficients(
        _powers_of_two(8), 2, on_ratios=on_ratios, schedule=ONE_APPROXIMANT, min_approximants=1
    )
    assert [t.L for t in prediction.coefficients] == [9, 10]
    assert [float(t.value) for t in prediction.coefficients] == pytest.approx([512.0, 1024.0])
    assert bool(prediction.ratios) == on_ratios
    assert all(entry.kind == PREDICTED for entry in prediction.entries())


def test_extend_series_appends_predicted_entries():
    extended = extend_series(_powers_of_two(8), 1, schedule=ONE_APPROXIMANT, min_approximants=1)
    assert extended.Ls == list(range(1, 10))
    assert not extended.entries[-1].is_exact
    assert float(extended.entries[-1].value) == pytest.approx(512.0)


def test_too_few_approximants():
    with pytest.raises(InsufficientTermsError):
        predict_coefficients(_powers_of_two(8), 1, schedule=ONE_APPROXIMANT, min_approximants=2)


def test_too_few_terms():
    with pytest.raises(InsufficientTermsError):
        predict_coefficients(_powers_of_two(2), 1)


SELF_TEST_PROBLEMS = ["hex-rhombus-saw", "hex-rhombus-sap", "hex-triangle-sap", "hex-triangle-saw-top", "sq-saw-spanning"]


def test_prediction_defaults():
    assert PREDICTION_ORDER == 3
    assert MIN_APPROXIMANTS >= 20


@pytest.mark.slow
def test_truncated_tables_predict_their_next_terms(golden):
    # corta em L=14, prevê L=15..17 e compara com a tabela
    passed = 0
    for problem in SELF_TEST_PROBLEMS:
        table = golden(problem)
        kept = Series(problem, [e for e in table.entries if e.L <= 14])
        try:
            prediction = predict_coefficients(kept, 3)
        except InsufficientTermsError:
            continue
        errors = [abs(float(t.value / table.value_at(t.L)) - 1) for t in prediction.coefficients]
        spreads = [float(t.relative_spread) for t in prediction.coefficients]
        passed += len(errors) == 3 and all(e < min(s, 1e-4) for e, s in zip(errors, spreads))
    assert passed >= 4
