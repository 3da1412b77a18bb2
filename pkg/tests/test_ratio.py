from fractions import Fraction

import mpmath as mp
import pytest

from core.errors import InsufficientTermsError
from core.exact_count import Series, SeriesEntry
from core.analysis.ratio import ratio_estimators, ratio_series

TINY = mp.mpf(10) ** -40


def test_geometric_series():
    est = ratio_estimators([2 ** n for n in range(12)])
    assert all(abs(r - 2) < TINY for r in est.r.values())
    assert all(abs(l - 2) < TINY for l in est.l.values())
    assert all(abs(d - 1) < TINY for d in est.delta.values())
    assert est.gamma == {} and est.mu == {}
    assert min(est.l) == 2 and min(est.r) == 1


def test_linear_times_geometric():
    est = ratio_estimators([(n + 1) * 2 ** n for n in range(15)], z_c=0.5, gamma=2)
    for n, d in est.delta.items():
        assert abs(d - 2) < TINY, n
    assert all(abs(g - 2) < TINY for g in est.gamma.values())
    assert all(abs(m - 2) < TINY for m in est.mu.values())


def test_rows_are_ordered():
    rows = ratio_estimators([1, 3, 9, 27]).rows()
    assert [row["n"] for row in rows] == [1, 2, 3]
    assert rows[0]["l"] is None


def test_errors():
    with pytest.raises(InsufficientTermsError):
        ratio_estimators([1, 2])
    with pytest.raises(ValueError):
        ratio_estimators([1, 0, 3])


def test_ratio_series_is_exact(golden):
    ratios = ratio_series(golden("hex-triangle-saw"))
    assert ratios[0] == (2, Fraction(7, 2))
    assert all(isinstance(r, Fraction) for _, r in ratios)


def test_ratio_series_rejects_gaps():
    series = Series("x", [SeriesEntry(1, 2), SeriesEntry(3, 8)])
    with pytest.raises(InsufficientTermsError):
        ratio_series(series)
