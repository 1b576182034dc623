from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmme.bath import (
    BathSpec,
    UnsupportedConfiguration,
    correlation,
    lambda_real,
    occupation_plus_one,
    planck,
    spectral_density,
)

FIG3 = BathSpec(0.1, 8.0)


def test_spectral_density_values():
    assert spectral_density(FIG3, 0.0) == 0.0
    assert spectral_density(FIG3, 8.0) == pytest.approx(0.8 / math.e)
    assert round(spectral_density(FIG3, 8.0), 4) == 0.2943
    assert spectral_density(FIG3, -3.0) == -spectral_density(FIG3, 3.0)


def test_planck_limits():
    assert planck(FIG3, 2.0) == 0.0
    assert planck(FIG3, -2.0) == -1.0
    hot = BathSpec(0.1, 8.0, temperature=1.0)
    assert planck(hot, 1.0) == pytest.approx(1 / (math.e - 1))
    with pytest.raises(ValueError):
        planck(hot, 0.0)
    with pytest.raises(ValueError):
        planck(FIG3, 0.0)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 10.0), st.floats(0.01, 30.0))
def test_planck_reflection(T, w):
    b = BathSpec(1.0, 1.0, temperature=T)
    assert planck(b, -w) + planck(b, w) + 1 == pytest.approx(0.0, abs=1e-12 * max(1.0, planck(b, w)))


def test_occupation_stable_far_from_zero():
    b = BathSpec(1.0, 1.0, temperature=0.01)
    assert occupation_plus_one(b, 50.0) == 1.0
    assert occupation_plus_one(b, -50.0) == pytest.approx(0.0, abs=1e-300)
    assert occupation_plus_one(b, -5.0) == pytest.approx(-math.exp(-500.0), rel=1e-12)


def test_lambda_real_examples():
    assert lambda_real(FIG3, 2.0) == pytest.approx(math.pi * 0.2 * math.exp(-0.25))
    assert round(lambda_real(FIG3, 2.0), 4) == 0.4893
    assert lambda_real(FIG3, -2.0) == 0.0
    hot = BathSpec(0.3, 5.0, temperature=0.8)
    assert lambda_real(hot, 0.0) == pytest.approx(math.pi * 0.3 * 0.8)
    assert lambda_real(hot, 1e-9) == pytest.approx(lambda_real(hot, 0.0), rel=1e-6)
    for a in np.linspace(-10, 10, 81):
        assert lambda_real(hot, float(a)) >= 0.0


def test_lambda_real_detailed_balance():
    hot = BathSpec(0.3, 5.0, temperature=0.8)
    for a in (0.3, 1.0, 4.0):
        assert lambda_real(hot, a) / lambda_real(hot, -a) == pytest.approx(math.exp(a / 0.8), rel=1e-12)


def test_lambda_real_with_frequency_shift():
    b = BathSpec(0.3, 5.0, temperature=0.0, omega_l=1.0)
    assert lambda_real(b, -0.5) == pytest.approx(math.pi * spectral_density(b, -0.5))


def test_correlation_at_zero_delay():
    assert correlation(FIG3, 0.0) == pytest.approx(complex(0.1 * 64, 0.0))


def test_correlation_closed_vs_quadrature():
    b = BathSpec(1.0, 20.0)
    for s in np.linspace(0.0, 10 / b.omega_c, 21):
        c = correlation(b, float(s), "closed")
        q = correlation(b, float(s), "quad")
        assert abs(c - q) <= 1e-8 * abs(c) + 1e-9


def test_correlation_conjugate_symmetry():
    for s in (0.01, 0.1, 0.7):
        assert abs(correlation(FIG3, -s) - correlation(FIG3, s).conjugate()) <= 1e-10


def test_thermal_correlation_reduces_to_zero_temperature():
    cold = BathSpec(1.0, 4.0, temperature=1e-4)
    for s in (0.0, 0.2, 1.0):
        c = correlation(cold, s)
        assert abs(c - correlation(BathSpec(1.0, 4.0), s)) <= 1e-6 * abs(c) + 1e-8
    with pytest.raises(UnsupportedConfiguration):
        correlation(cold, 0.1, "closed")
    with pytest.raises(ValueError):
        correlation(FIG3, 0.1, "series")


@pytest.mark.parametrize(
    "kwargs, field",
    [
        (dict(kappa=-0.1, omega_c=1.0), "kappa"),
        (dict(kappa=0.1, omega_c=0.0), "omega_c"),
        (dict(kappa=0.1, omega_c=1.0, temperature=-1.0), "temperature"),
        (dict(kappa=math.nan, omega_c=1.0), "kappa"),
        (dict(kappa=0.1, omega_c=1.0, family="lorentzian"), "family"),
    ],
)
def test_bath_validation_names_field(kwargs, field):
    with pytest.raises(ValueError, match=field):
        BathSpec(**kwargs)
