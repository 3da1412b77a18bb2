import math

import mpmath as mp
import pytest

from core.errors import InsufficientTermsError
from core.exact_count import Series
from core.analysis.fits import (
    m1_lambda,
    m2_ratio_of_ratios,
    p1_subdominant,
    p2_triple_fit,
    parity_adjusted_ratios,
    sliding_fit,
)

LAM = mp.mpf("1.5")


def test_sliding_fit_recovers_polynomial():
    xs = list(range(5, 20))
    ys = [3 + 2 / x - 1 / x ** 3 for x in xs]
    fits = sliding_fit(xs, ys, (1, 3))
    assert fits[-1].last == 19
    assert fits[-1].intercept == pytest.approx(3, abs=1e-9)
    with pytest.raises(InsufficientTermsError):
        sliding_fit(xs[:3], ys[:3], (1, 2, 3))


def test_m1_pure_growth(synthetic):
    series = synthetic(lambda L: LAM ** (L * L), range(1, 13))
    fit = m1_lambda(series)
    assert all(v == pytest.approx(1.5, abs=1e-12) for v in fit.raw.values())
    assert fit.lam == pytest.approx(1.5, abs=1e-9)
    assert fit.spec()["powers"] == [1, 2, 3]


def test_m1_size_exponent(synthetic):
    series = synthetic(lambda L: LAM ** (2 * L * L), range(1, 13))
    fit = m1_lambda(series, size_exponent=2)
    assert fit.extras["lambda_power"] == pytest.approx(2.25, abs=1e-9)
    assert fit.lam == pytest.approx(1.5, abs=1e-9)


def test_m2_pure_growth(synthetic):
    fit = m2_ratio_of_ratios(synthetic(lambda L: LAM ** (L * L), range(1, 12)))
    assert all(v == pytest.approx(2.25, abs=1e-12) for v in fit.raw.values())
    assert fit.lam == pytest.approx(1.5, abs=1e-9)


def test_m2_power_law_correction(synthetic):
    g = mp.mpf("0.25")
    fit = m2_ratio_of_ratios(synthetic(lambda L: LAM ** (L * L) * mp.power(L, g), range(1, 41)))
    assert fit.extras["c2"] == pytest.approx(-0.5625, abs=1e-3)
    assert fit.g == pytest.approx(0.25, abs=1e-3)


def test_m2_needs_four_terms(synthetic):
    with pytest.raises(InsufficientTermsError):
        m2_ratio_of_ratios(synthetic(lambda L: L, range(1, 4)))


def test_p1_recovers_subdominant_terms(synthetic):
    b, c = mp.mpf("-0.1"), mp.mpf("0.3")
    series = synthetic(lambda L: LAM ** (L * L + b * L + c), range(1, 16))
    fit = p1_subdominant(series, 1.5, g=0.0)
    assert fit.extras["alpha"] == pytest.approx(float(LAM ** b), abs=1e-6)
    assert fit.extras["amplitude"] == pytest.approx(float(LAM ** c), abs=1e-6)
    assert fit.b == pytest.approx(-0.1, abs=1e-6)
    assert fit.c == pytest.approx(0.3, abs=1e-6)
    with pytest.raises(ValueError):
        p1_subdominant(series, 1.0)


def test_p2_exact_on_three_parameter_model(synthetic):
    b, c, g = mp.mpf("-0.1"), mp.mpf("0.3"), mp.mpf("0.5")
    series = synthetic(lambda L: LAM ** (L * L + b * L + c) * mp.power(L, g), range(1, 12))
    triples = p2_triple_fit(series, 1.5)
    assert len(triples) == 9
    log_lam = math.log(1.5)
    for t in triples:
        assert t.b_log_lambda == pytest.approx(-0.1 * log_lam, abs=1e-10)
        assert t.c_log_lambda == pytest.approx(0.3 * log_lam, abs=1e-10)
        assert t.g == pytest.approx(0.5, abs=1e-10)


def test_parity_ratios_identity(synthetic):
    series = synthetic(lambda L: LAM ** (L * L) * (L + 2), range(1, 12))
    parity = parity_adjusted_ratios(series)
    values = dict(zip(series.Ls, series.values()))
    for L, r_star in parity.r_star.items():
        r_L = values[L] / values[L - 1]
        r_prev = values[L - 1] / values[L - 2]
        assert r_star ** 2 == pytest.approx(float(r_L * r_prev), rel=1e-12)
    assert parity.fit is not None


def test_parity_ratios_on_hex_square(golden):
    parity = parity_adjusted_ratios(golden("hex-square-saw"))
    assert parity.r_star[3] == pytest.approx(math.sqrt(264 / 2), rel=1e-12)
    assert set(parity.averaged) <= set(parity.c_star)
    with pytest.raises(InsufficientTermsError):
        parity_adjusted_ratios(Series("x", golden("hex-square-saw").entries[:4]))


def _up_to(series, L_max):
    return Series(series.problem, [e for e in series.entries if e.L <= L_max])


def test_parity_fit_on_hex_square_has_no_power_law(golden):
    # 𝓒* ≈ c_0 + c_2/L² + c_4/L⁴ com c_2 = -g λ⁴ e g = 0
    parity = parity_adjusted_ratios(golden("hex-square-saw"))
    assert parity.fit.powers == (2, 4)
    assert abs(parity.fit.extras["c2"]) < 0.05


def test_m1_on_the_rhombus(golden):
    fit = m1_lambda(_up_to(golden("hex-rhombus-saw"), 14), size_exponent=2)
    assert fit.extras["lambda_power"] == pytest.approx(1.924461, abs=1e-3)


def test_m1_on_the_square(golden):
    fit = m1_lambda(_up_to(golden("sq-saw-crossing"), 14))
    assert fit.lam == pytest.approx(1.7445498, abs=5e-3)


def test_m2_on_the_triangle(golden):
    fit = m2_ratio_of_ratios(_up_to(golden("hex-triangle-saw"), 16))
    assert fit.lam == pytest.approx(1.38724951, abs=1e-4)


def test_m2_correction_amplitude_on_the_triangle(golden):
    # c_2 estima -g λ_H²
    fit = m2_ratio_of_ratios(golden("hex-triangle-saw"))
    assert fit.extras["c2"] == pytest.approx(-0.1602, abs=5e-3)


def test_p1_on_square_polygons(golden):
    fit = p1_subdominant(golden("sq-sap-crossing"), 1.7445498, g=-0.5)
    assert fit.extras["alpha"] == pytest.approx(0.9761, abs=1e-4)
    assert fit.b == pytest.approx(-0.04351, abs=1e-4)
    assert fit.extras["amplitude"] == pytest.approx(0.5130, abs=1e-3)


def test_p2_on_square_polygons(golden):
    last = p2_triple_fit(golden("sq-sap-crossing"), 1.7445498)[-1]
    assert last.g == pytest.approx(-0.5005, abs=1e-2)
    assert last.b_log_lambda == pytest.approx(-0.02422, abs=5e-4)


def test_p2_on_square_walks(golden):
    last = p2_triple_fit(golden("sq-saw-crossing"), 1.7445498)[-1]
    assert last.b_log_lambda == pytest.approx(-0.02422, abs=2e-3)
    assert abs(last.g) < 0.05
