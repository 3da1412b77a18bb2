from fractions import Fraction
from math import prod

import pytest

from core.errors import DefectiveApproximantError
from core.analysis.differential import (
    critical_singularity,
    da_terms,
    fit_biased_da,
    fit_da,
    singularities,
)

POWERS_OF_TWO = [2 ** k for k in range(8)]


def _geometric_squared(n_terms):
    # (1 - z/0.7)^-2 = Σ (n + 1) (10/7)^n z^n
    return [Fraction((n + 1) * 10 ** n, 7 ** n) for n in range(n_terms)]


def test_first_order_fit_on_a_simple_pole():
    da = fit_da(POWERS_OF_TWO, 1, (1, 1), -1)
    assert da.n_coefficients == da_terms(1, (1, 1), -1) == 3
    assert da.Q[1] == [1, -2]
    assert da.Q[0] == [0, -2]
    assert da.P == []
    [s] = singularities(da)
    assert float(s.z.real) == pytest.approx(0.5)
    assert float(s.exponent) == pytest.approx(-1.0)


def test_inhomogeneous_fit_is_degenerate_on_a_pole():
    # (1 - 2z) F = 1 leaves one free direction in Q_0 and P
    assert fit_da(POWERS_OF_TWO, 1, (1, 1), 0).degenerate


def test_residuals_vanish_past_the_fitted_terms():
    da = fit_da(POWERS_OF_TWO, 1, (1, 1), -1)
    assert all(da.residual(POWERS_OF_TWO, n) == 0 for n in range(len(POWERS_OF_TWO)))


def test_recurrence_continues_the_series():
    da = fit_da(POWERS_OF_TWO[:3], 1, (1, 1), -1)
    extended = da.extend(POWERS_OF_TWO[:3], 8)
    assert [int(v) for v in extended] == POWERS_OF_TWO


def test_double_pole_exponent():
    da = fit_da(_geometric_squared(8), 1, (1, 1), -1)
    s = critical_singularity(da)
    assert float(s.z.real) == pytest.approx(0.7)
    assert float(s.exponent) == pytest.approx(-2.0)


def test_rescaling_moves_the_singularity_only():
    scaled = [Fraction(3) ** n * c for n, c in enumerate(POWERS_OF_TWO)]
    s = critical_singularity(fit_da(scaled, 1, (1, 1), -1))
    assert float(s.z.real) == pytest.approx(1 / 6)
    assert float(s.exponent) == pytest.approx(-1.0)


def test_biased_fit_pins_the_singularity():
    da = fit_biased_da(POWERS_OF_TWO, 1, (1, 1), -1, 0.5, q=1)
    assert da.bias_point == Fraction(1, 2)
    assert da.bias_exponents == (0, 1)
    assert da.n_coefficients == 2
    assert da.Q[1] == [1, -2]
    s = critical_singularity(da, near=0.5)
    assert float(s.exponent) == pytest.approx(-1.0)


def test_biased_input_checks():
    with pytest.raises(ValueError):
        fit_biased_da(POWERS_OF_TWO, 1, (1, 1), -1, 0.5, q=2)
    with pytest.raises(ValueError):
        fit_biased_da(POWERS_OF_TWO, 1, (1, 1), -1, -0.5)
    with pytest.raises(ValueError):
        fit_biased_da(POWERS_OF_TWO, 1, (1, 0), -1, 0.5)


def test_degree_checks():
    with pytest.raises(ValueError):
        fit_da(POWERS_OF_TWO, 0, (1,), -1)
    with pytest.raises(ValueError):
        fit_da(POWERS_OF_TWO, 1, (1, 1, 1), -1)
    with pytest.raises(ValueError):
        fit_da(POWERS_OF_TWO, 1, (1, 1), -2)


def test_constant_top_polynomial_has_no_singularities():
    da = fit_da(POWERS_OF_TWO, 1, (1, 0), -1)
    with pytest.raises(DefectiveApproximantError):
        singularities(da)


def test_square_root_branch():
    # (1 - 4z)^(-1/2): central binomial coefficients
    coefficients = [prod(range(n + 1, 2 * n + 1)) // prod(range(1, n + 1)) for n in range(8)]
    s = critical_singularity(fit_da(coefficients, 1, (1, 1), -1))
    assert float(s.z.real) == pytest.approx(0.25)
    assert float(s.exponent) == pytest.approx(-0.5)
