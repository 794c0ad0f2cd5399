import math

import numpy as np
import pytest

from nestcorr.asymptotics import fit_power_law, leading_asymptote, mehta_integral, predicted_amplitude
from nestcorr.xx0 import ChainConfig, persistence_spectrum


def test_mehta_small_values():
    assert mehta_integral(1).value == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-15)
    assert mehta_integral(2).value == pytest.approx(1 / (2 * math.pi), rel=1e-15)


def test_mehta_recurrence_across_log_space_switch():
    for N in range(1, 25):
        a, b = mehta_integral(N), mehta_integral(N + 1)
        expected = math.lgamma(N + 1) - 0.5 * math.log(2 * math.pi)
        assert b.log_value - a.log_value == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_mehta_estimate_difference_is_logarithmic():
    mv = mehta_integral(20)
    assert abs(mv.difference) / math.log(20) <= 10


def test_fit_power_law_recovers_exponent():
    ts = np.geomspace(5, 50, 20)
    exponent, amp = fit_power_law(ts, 3.0 * ts**-1.5)
    assert exponent == pytest.approx(1.5, abs=1e-12)
    assert amp == pytest.approx(3.0, rel=1e-12)


def test_one_particle_amplitude_slope():
    rep = leading_asymptote("amplitude", 60, 1, window=(20, 60))
    assert 0.42 <= rep.fitted_exponent <= 0.58
    assert rep.relative_amplitude_error < 0.05


def test_persistence_slope_with_full_domain_wall():
    rep = leading_asymptote("persistence", 60, 2, n=2, window=(15, 40))
    assert rep.fitted_exponent == pytest.approx(2.0, rel=0.2)
    assert rep.fitted_amplitude == pytest.approx(mehta_integral(2).value, rel=0.1)


def test_persistence_slope_without_domain_wall_is_exponential_decay():
    # finding: n=0 decays as exp(-t E_ground); the fitted log-log slope is nowhere near N^2/2
    rep = leading_asymptote("persistence", 60, 2, n=0, window=(15, 40))
    assert rep.fitted_exponent < 0.5
    spec = persistence_spectrum(ChainConfig(60, 2), 0)
    assert spec.value(20.0) > 0


def test_predicted_amplitude_grows_with_box_height():
    a = predicted_amplitude("persistence", 30, 2, 0)
    b = predicted_amplitude("persistence", 60, 2, 0)
    assert b > a


def test_regime_notes():
    rep = leading_asymptote("amplitude", 20, 1, window=(5, 15), points=10)
    assert "regime" in rep.notes
    assert "recurrence" in rep.notes
