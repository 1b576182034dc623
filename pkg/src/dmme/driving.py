"""Driving protocols for ``H_s(t) = Delta(t) sigma_z + Omega(t) sigma_x``.

All frequencies are angular frequencies in natural units (hbar = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import PchipInterpolator

from .qlinalg import SIGMA_X, SIGMA_Z

__all__ = [
    "FAMILIES",
    "ProtocolWindowError",
    "DrivingProtocol",
    "constant",
    "sine_squared",
    "landau_zener",
    "tabulated",
    "analytic",
    "inertial",
]

FAMILIES = ("constant", "sine-squared", "landau-zener", "custom-tabulated", "custom-analytic", "inertial")

WINDOW_TOL = 1e-9


class ProtocolWindowError(ValueError):
    pass


DriveFn = Callable[[float], tuple[float, float, float, float]]


@dataclass(frozen=True)
class DrivingProtocol:
    """A time window plus a function returning ``(Delta, Omega, dDelta/dt, dOmega/dt)``."""

    family: str
    params: dict
    t_start: float
    t_end: float
    _fn: DriveFn = field(repr=False, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown protocol family {self.family!r}")
        if not self.t_end > self.t_start:
            raise ValueError(f"empty time window [{self.t_start}, {self.t_end}]")

    @property
    def window(self) -> tuple[float, float]:
        return (self.t_start, self.t_end)

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    def check_time(self, t: float) -> None:
        if t < self.t_start - WINDOW_TOL or t > self.t_end + WINDOW_TOL:
            raise ProtocolWindowError(
                f"t={t!r} outside protocol window [{self.t_start}, {self.t_end}]"
            )

    def eval(self, t: float) -> tuple[float, float, float, float]:
        self.check_time(t)
        return self._fn(t)

    def delta_omega(self, t: float) -> tuple[float, float]:
        d, o, _, _ = self.eval(t)
        return d, o

    def hamiltonian(self, t: float) -> np.ndarray:
        d, o, _, _ = self.eval(t)
        return d * SIGMA_Z + o * SIGMA_X

    def max_abs_omega(self, n: int = 2001) -> float:
        ts = np.linspace(self.t_start, self.t_end, n)
        return float(max(abs(self._fn(float(t))[1]) for t in ts))


def constant(delta0: float, omega0: float, t_start: float = 0.0, t_end: float = 1.0) -> DrivingProtocol:
    def fn(t):
        return (delta0, omega0, 0.0, 0.0)

    return DrivingProtocol("constant", {"delta0": delta0, "omega0": omega0}, t_start, t_end, fn)


def sine_squared(
    delta: float, omega0: float, omega_c: float, t_start: float = 0.0, t_end: float = 10.0
) -> DrivingProtocol:
    """Constant detuning with ``Omega(t) = omega0 sin^2(omega_c t)``."""

    def fn(t):
        s = math.sin(omega_c * t)
        c = math.cos(omega_c * t)
        return (delta, omega0 * s * s, 0.0, 2.0 * omega0 * omega_c * s * c)

    params = {"delta": delta, "omega0": omega0, "omega_c": omega_c}
    return DrivingProtocol("sine-squared", params, t_start, t_end, fn)


def landau_zener(v: float, omega0: float, half_width: Optional[float] = None) -> DrivingProtocol:
    """Linear sweep ``Delta = v t / 2``, ``Omega = omega0 / 2`` on ``[-T, T]``.

    ``T`` defaults to ``40 / sqrt(v)``.
    """
    if v <= 0:
        raise ValueError("sweep velocity v must be positive")
    T = 40.0 / math.sqrt(v) if half_width is None else float(half_width)

    def fn(t):
        return (0.5 * v * t, 0.5 * omega0, 0.5 * v, 0.0)

    return DrivingProtocol("landau-zener", {"v": v, "omega0": omega0}, -T, T, fn)


def tabulated(times, deltas, omegas) -> DrivingProtocol:
    """Monotone cubic (PCHIP) interpolation of sampled drives.

    Derivatives are centered differences with step ``1e-6`` times the window.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) < 2 or np.any(np.diff(times) <= 0):
        raise ValueError("tabulated times must be strictly increasing with at least two points")
    d_int = PchipInterpolator(times, np.asarray(deltas, dtype=float), extrapolate=True)
    o_int = PchipInterpolator(times, np.asarray(omegas, dtype=float), extrapolate=True)
    t0, t1 = float(times[0]), float(times[-1])
    h = 1e-6 * (t1 - t0)

    def fn(t):
        a = max(t - h, t0)
        b = min(t + h, t1)
        dd = (float(d_int(b)) - float(d_int(a))) / (b - a)
        do = (float(o_int(b)) - float(o_int(a))) / (b - a)
        return (float(d_int(t)), float(o_int(t)), dd, do)

    params = {"n_points": int(len(times))}
    return DrivingProtocol("custom-tabulated", params, t0, t1, fn)


def analytic(
    delta: Callable[[float], float],
    omega: Callable[[float], float],
    ddelta: Callable[[float], float],
    domega: Callable[[float], float],
    t_start: float,
    t_end: float,
    family: str = "custom-analytic",
    params: Optional[dict] = None,
) -> DrivingProtocol:
    def fn(t):
        return (delta(t), omega(t), ddelta(t), domega(t))

    return DrivingProtocol(family, dict(params or {}), t_start, t_end, fn)


def inertial(
    mu: float,
    omega_bar0: float = 1.0,
    growth: float = 0.5,
    phase0: float = 1.2,
    t_start: float = 0.0,
    t_end: float = 1.0,
) -> DrivingProtocol:
    """Drive with a constant adiabatic parameter ``mu``.

    With ``Delta = W cos(phi)`` and ``Omega = W sin(phi)`` one has
    ``Omega dDelta - Delta dOmega = -W^2 dphi``, so ``mu`` stays constant when
    ``dphi/dt = -2 mu W``.  Here ``W(t) = omega_bar0 (1 + growth t)``.
    """

    def fn(t):
        w = omega_bar0 * (1.0 + growth * t)
        dw = omega_bar0 * growth
        phi = phase0 - 2.0 * mu * omega_bar0 * (t + 0.5 * growth * t * t)
        dphi = -2.0 * mu * w
        c, s = math.cos(phi), math.sin(phi)
        return (w * c, w * s, dw * c - w * s * dphi, dw * s + w * c * dphi)

    params = {"mu": mu, "omega_bar0": omega_bar0, "growth": growth, "phase0": phase0}
    return DrivingProtocol("inertial", params, t_start, t_end, fn)
