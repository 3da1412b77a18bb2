from fractions import Fraction

import pytest

from core.errors import InsufficientTermsError
from core.analysis.pade import pade, pade_table, smallest_positive_root

POWERS_OF_TWO = [2 ** k for k in range(10)]


def test_geometric_series_is_exact_at_0_1():
    approximant = pade(POWERS_OF_TWO, 0, 1)
    assert approximant.denominator == [1, -2]
    assert approximant.numerator == [1]
    assert float(approximant.root) == pytest.approx(0.5)
    assert float(approximant.growth) == pytest.approx(2 ** 0.5)


def test_higher_order_sees_the_same_pole():
    approximant = pade([Fraction(v) for v in POWERS_OF_TWO], 2, 1)
    assert float(approximant.root) == pytest.approx(0.5)
    assert not approximant.degenerate


def test_smallest_positive_root():
    # (1 - z)(1 - z/3) = 1 - 4z/3 + z²/3
    assert float(smallest_positive_root([1, Fraction(-4, 3), Fraction(1, 3)])) == pytest.approx(1.0)
    assert smallest_positive_root([1, 1]) is None
    assert smallest_positive_root([5]) is None


def test_input_checks():
    with pytest.raises(InsufficientTermsError):
        pade([1, 2], 1, 1)
    with pytest.raises(ValueError):
        pade(POWERS_OF_TWO, -1, 1)


def test_table_skips_degenerate_systems():
    # degenerate [1/2]: the geometric series already closes at [0/1]
    table = pade_table(POWERS_OF_TWO, [(0, 1), (1, 2), (2, 2)])
    assert (0, 1) in [(a.m, a.n) for a in table]
    assert all(not a.degenerate for a in table)
