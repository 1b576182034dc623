from __future__ import annotations

import numpy as np
import pytest

from dmme import driving, lri


def rk4_fixed(fun, t0, t1, y0, h):
    """Classical fixed-step RK4; an oracle independent of the adaptive integrator."""
    n = int(round((t1 - t0) / h))
    h = (t1 - t0) / n
    y = np.array(y0, dtype=float)
    t = t0
    for _ in range(n):
        k1 = fun(t, y)
        k2 = fun(t + h / 2, y + h / 2 * k1)
        k3 = fun(t + h / 2, y + h / 2 * k2)
        k4 = fun(t + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    return y


@pytest.fixture(scope="session")
def sine_protocol():
    return driving.sine_squared(1.0, 1.0, 1.0, 0.0, 5.0)


@pytest.fixture(scope="session")
def sine_frame(sine_protocol):
    return lri.solve_lri(sine_protocol, rtol=1e-11, atol=1e-13)


@pytest.fixture(scope="session")
def lz_frame():
    return lri.solve_lri(driving.landau_zener(1.0, 2.0, half_width=10.0))


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
