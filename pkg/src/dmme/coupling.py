"""Eigenoperator expansion of the coupling operators ``sigma_x`` and ``sigma_y``.

In the interaction picture ``U^dagger A_j U = sum_mn xi_mn e^{i theta_mn} F_mn``
with ``F_mn = |psi_m(0)><psi_n(0)|``.  Tables below are 2x2 arrays indexed
``[m-1, n-1]``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from .lri import Kinematics, LriFrame, states_from_angles

__all__ = [
    "CHANNELS",
    "DEGENERACY_THRESHOLD",
    "DegenerateChannel",
    "matrix_elements",
    "amplitudes",
    "frequency_12",
    "frequencies",
    "frequency_parts",
    "phases",
    "theta_memory",
]

CHANNELS = ("x", "y")
DEGENERACY_THRESHOLD = 1e-9


class DegenerateChannel(ArithmeticError):
    """The channel's off-diagonal element vanishes, so its frequency is undefined."""

    def __init__(self, channel: str, t: float, denominator: float):
        super().__init__(
            f"channel {channel}: 1 - sin^2(2eta)(...) = {denominator:.3e} below threshold at t={t:.12g}"
        )
        self.channel = channel
        self.t = t


def _check_channel(channel: str) -> None:
    if channel not in CHANNELS:
        raise ValueError(f"unknown coupling channel {channel!r}; expected one of {CHANNELS}")


def matrix_elements(eta: float, zeta: float) -> dict[str, np.ndarray]:
    """``<psi_m|sigma_j|psi_n>`` for ``j`` in ``x, y`` (closed form)."""
    s2, c2 = math.sin(2 * eta), math.cos(2 * eta)
    sz, cz = math.sin(zeta), math.cos(zeta)
    ax12 = complex(-c2 * cz, sz)
    ay12 = complex(c2 * sz, cz)
    ax = np.array([[s2 * cz, ax12], [ax12.conjugate(), -s2 * cz]])
    ay = np.array([[-s2 * sz, ay12], [ay12.conjugate(), s2 * sz]])
    return {"x": ax, "y": ay}


def _xi_table(eta: float, zeta: float, channel: str) -> np.ndarray:
    s2 = math.sin(2 * eta)
    trig = math.cos(zeta) if channel == "x" else math.sin(zeta)
    diag = abs(s2 * trig)
    off = math.sqrt(max(0.0, 1.0 - (s2 * trig) ** 2))
    return np.array([[diag, off], [off, diag]])


def amplitudes(frame: LriFrame, t: float) -> dict[str, np.ndarray]:
    eta, zeta = frame.angles(t)
    return {j: _xi_table(eta, zeta, j) for j in CHANNELS}


def frequency_12(k: Kinematics, channel: str) -> float:
    """Instantaneous frequency ``alpha^j_12 = -d theta^j_12 / dt``."""
    s2, c2 = math.sin(2 * k.eta), math.cos(2 * k.eta)
    base = -k.dzeta * c2 - 2 * k.delta * c2 - 2 * k.omega * math.cos(k.zeta) * s2
    if channel == "x":
        den = 1.0 - (s2 * math.cos(k.zeta)) ** 2
        if den < DEGENERACY_THRESHOLD:
            raise DegenerateChannel(channel, k.t, den)
        return base + (k.deta * s2 * math.sin(2 * k.zeta) + k.dzeta * c2) / den
    if channel == "y":
        den = 1.0 - (s2 * math.sin(k.zeta)) ** 2
        if den < DEGENERACY_THRESHOLD:
            raise DegenerateChannel(channel, k.t, den)
        return base - (k.deta * s2 * math.sin(2 * k.zeta) - k.dzeta * c2) / den
    _check_channel(channel)
    raise AssertionError


def frequencies(frame: LriFrame, t: float, channels=CHANNELS) -> dict[str, np.ndarray]:
    k = frame.kinematics(t)
    out = {}
    for j in channels:
        a = frequency_12(k, j)
        out[j] = np.array([[0.0, a], [-a, 0.0]])
    return out


def frequency_parts(frame: LriFrame, t: float, channel: str) -> tuple[float, float, float]:
    """Split ``alpha^j_12`` into energy-gap, geometric and coupling-argument terms."""
    _check_channel(channel)
    k = frame.kinematics(t)
    p1, p2 = states_from_angles(k.eta, k.zeta)
    h = np.array([[k.delta, k.omega], [k.omega, -k.delta]])
    e1 = float(np.real(np.vdot(p1, h @ p1)))
    e2 = float(np.real(np.vdot(p2, h @ p2)))
    energy = -(e1 - e2)
    # i<psi_1|d psi_1> = -cos^2(eta) dzeta,  i<psi_2|d psi_2> = -sin^2(eta) dzeta
    geometric = -math.cos(k.eta) ** 2 * k.dzeta + math.sin(k.eta) ** 2 * k.dzeta
    s2, c2 = math.sin(2 * k.eta), math.cos(2 * k.eta)
    if channel == "x":
        den = 1.0 - (s2 * math.cos(k.zeta)) ** 2
        argument = (k.deta * s2 * math.sin(2 * k.zeta) + k.dzeta * c2) / den
    else:
        den = 1.0 - (s2 * math.sin(k.zeta)) ** 2
        argument = -(k.deta * s2 * math.sin(2 * k.zeta) - k.dzeta * c2) / den
    return energy, geometric, argument


def _raw_phi12(eta: float, zeta: float, channel: str) -> float:
    a12 = matrix_elements(eta, zeta)[channel][0, 1]
    return math.atan2(a12.imag, a12.real)


def _phi_track(frame: LriFrame, channel: str) -> tuple[np.ndarray, np.ndarray]:
    key = ("phi12", channel)
    cache = frame._cache
    if key not in cache:
        nodes = frame.times
        mids = 0.5 * (nodes[1:] + nodes[:-1])
        ts = np.sort(np.concatenate([nodes, mids]))
        raw = np.array([_raw_phi12(*frame.angles(float(t)), channel) for t in ts])
        cache[key] = (ts, np.unwrap(raw))
    return cache[key]


def phases(frame: LriFrame, t: float) -> dict[str, np.ndarray]:
    """``theta^j_mn``; the off-diagonal phase is continued smoothly in ``t``."""
    eta, zeta, a1, a2 = frame.state(t)
    els = matrix_elements(eta, zeta)
    out = {}
    for j in CHANNELS:
        ts, track = _phi_track(frame, j)
        raw = _raw_phi12(eta, zeta, j)
        ref = float(np.interp(t, ts, track))
        phi12 = raw + 2 * math.pi * round((ref - raw) / (2 * math.pi))
        th12 = a2 - a1 + phi12
        # diagonal phases are 0 or pi, carrying the sign of the real element
        th11 = 0.0 if els[j][0, 0].real >= 0 else math.pi
        th22 = 0.0 if els[j][1, 1].real >= 0 else math.pi
        out[j] = np.array([[th11, th12], [-th12, th22]])
    return out


def theta_memory(frame: LriFrame, t: float, s: float, channel: str) -> np.ndarray:
    """Phase-memory correction ``Theta_mn(t, t-s) = int_{t-s}^t (alpha(tau) - alpha(t)) dtau``."""
    _check_channel(channel)
    if s < 0:
        raise ValueError("delay s must be non-negative")
    if t - s < frame.t_start - 1e-12:
        raise ValueError(f"t - s = {t - s!r} precedes the frame start {frame.t_start}")
    if s == 0:
        return np.zeros((2, 2))
    a_t = frequency_12(frame.kinematics(t), channel)
    val, _ = quad(
        lambda tau: frequency_12(frame.kinematics(tau), channel) - a_t,
        t - s,
        t,
        epsabs=1e-12,
        epsrel=1e-10,
        limit=200,
    )
    return np.array([[0.0, val], [-val, 0.0]])
