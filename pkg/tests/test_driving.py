from __future__ import annotations

import math

import numpy as np
import pytest

from dmme import driving
from dmme.qlinalg import SIGMA_X, is_hermitian


def test_sine_squared_example():
    p = driving.sine_squared(1.0, 1.0, 1.0)
    d, o, dd, do = p.eval(math.pi / 2)
    assert (d, o, dd) == (1.0, pytest.approx(1.0), 0.0)
    assert do == pytest.approx(0.0, abs=1e-15)


def test_landau_zener_example():
    p = driving.landau_zener(1.0, 2.0)
    assert p.eval(0.0) == (0.0, 1.0, 0.5, 0.0)
    assert p.window == (-40.0, 40.0)
    assert np.allclose(p.hamiltonian(2.0), [[1, 1], [1, -1]])
    assert driving.landau_zener(4.0, 1.0).t_end == pytest.approx(20.0)
    with pytest.raises(ValueError):
        driving.landau_zener(0.0, 1.0)


def test_constant_and_hamiltonian():
    p = driving.constant(1.0, 0.0)
    for t in (0.0, 0.3, 1.0):
        assert p.eval(t) == (1.0, 0.0, 0.0, 0.0)
    assert np.allclose(p.hamiltonian(0.5), np.diag([1, -1]))
    assert np.allclose(driving.constant(0.0, 1.0).hamiltonian(0.2), SIGMA_X)


def test_window_tolerance():
    p = driving.constant(1.0, 1.0, 0.0, 1.0)
    p.eval(1.0 + 5e-10)
    with pytest.raises(driving.ProtocolWindowError):
        p.eval(1.0 + 1e-6)
    with pytest.raises(ValueError):
        driving.constant(1.0, 1.0, 1.0, 1.0)


@pytest.mark.parametrize(
    "p",
    [
        driving.sine_squared(0.7, 1.3, 2.0, 0.0, 3.0),
        driving.landau_zener(2.0, 0.5),
        driving.inertial(0.5),
    ],
    ids=["sine-squared", "landau-zener", "inertial"],
)
def test_reported_derivatives_match_finite_differences(p):
    h = 1e-6 * p.duration
    for t in np.linspace(p.t_start + 2 * h, p.t_end - 2 * h, 50):
        d, o, dd, do = p.eval(t)
        fd_d = (p.eval(t + h)[0] - p.eval(t - h)[0]) / (2 * h)
        fd_o = (p.eval(t + h)[1] - p.eval(t - h)[1]) / (2 * h)
        assert fd_d == pytest.approx(dd, rel=1e-6, abs=1e-7)
        assert fd_o == pytest.approx(do, rel=1e-6, abs=1e-7)
        assert is_hermitian(p.hamiltonian(t), tol=1e-14)


def test_tabulated_follows_samples_without_overshoot():
    ts = np.linspace(0.0, 2.0, 41)
    p = driving.tabulated(ts, np.sin(ts), np.cos(ts) ** 2)
    assert p.family == "custom-tabulated"
    for t in (0.13, 0.77, 1.5):
        d, o, dd, do = p.eval(t)
        assert d == pytest.approx(math.sin(t), abs=1e-4)
        assert dd == pytest.approx(math.cos(t), abs=1e-2)
    step = driving.tabulated([0, 1, 2, 3], [0, 0, 1, 1], [1, 1, 1, 1])
    vals = [step.eval(t)[0] for t in np.linspace(0, 3, 301)]
    assert min(vals) >= 0.0 and max(vals) <= 1.0
    with pytest.raises(ValueError):
        driving.tabulated([0, 0, 1], [0, 0, 0], [0, 0, 0])


def test_inertial_protocol_keeps_adiabatic_parameter():
    mu = 0.5
    p = driving.inertial(mu)
    for t in np.linspace(0, 1, 11):
        d, o, dd, do = p.eval(t)
        w = math.hypot(d, o)
        assert (o * dd - d * do) / (2 * w**3) == pytest.approx(mu, rel=1e-12)


def test_unknown_family_rejected():
    with pytest.raises(ValueError):
        driving.analytic(math.sin, math.cos, math.cos, math.sin, 0.0, 1.0, family="nope")
