"""Time-dependent decoherence rates for the driven master equation.

Rates are secular: only the combinations ``Gamma_+`` (jump psi_1 -> psi_2),
``Gamma_-`` (jump psi_2 -> psi_1) and the pure-dephasing ``Gamma_d`` are built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import quad

from .bath import BathSpec, UnsupportedConfiguration, correlation, lambda_real
from .coupling import CHANNELS, DegenerateChannel, _xi_table, frequency_12, phases
from .lri import LriFrame

__all__ = [
    "CONVENTIONS",
    "RateSet",
    "slow_phase_rates",
    "lz_rates",
    "dephasing_rates",
    "dephasing_rate_set",
    "memory_kernel_rate",
    "memory_kernel_rate_set",
]

CONVENTIONS = ("standard", "halved")


@dataclass(frozen=True)
class RateSet:
    t: float
    gamma_plus: float
    gamma_minus: float
    gamma_d: float
    lamb_plus: float = 0.0
    lamb_minus: float = 0.0
    lamb_d: float = 0.0
    alpha12: dict = field(default_factory=dict)
    negative_rate_warning: bool = False

    def alpha(self, channel: str) -> float:
        return self.alpha12.get(channel, math.nan)


def _flag_negative(*rates) -> bool:
    return any(r < 0 for r in rates)


def slow_phase_rates(
    frame: LriFrame,
    bath: BathSpec,
    t: float,
    channels=CHANNELS,
    convention: str = "standard",
) -> RateSet:
    """Rates in the slow-phase regime, from the instantaneous frequencies.

    ``convention="standard"`` gives ``2 xi^2 Lambda^R(alpha)`` per channel and
    ``"halved"`` gives ``xi^2 Lambda^R(alpha)``.  The dephasing rate always
    uses the former.  A channel whose off-diagonal element vanishes contributes
    nothing.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown rate convention {convention!r}; expected one of {CONVENTIONS}")
    pref = 2.0 if convention == "standard" else 1.0
    k = frame.kinematics(t)
    gp = gm = gd = 0.0
    alphas = {}
    for j in channels:
        if j not in CHANNELS:
            raise ValueError(f"unknown coupling channel {j!r}")
        xi = _xi_table(k.eta, k.zeta, j)
        gd += 2.0 * float(xi[0, 0]) ** 2 * lambda_real(bath, 0.0)
        try:
            a = frequency_12(k, j)
        except DegenerateChannel:
            alphas[j] = math.nan
            continue
        alphas[j] = a
        x2 = float(xi[0, 1]) ** 2
        gm += pref * x2 * lambda_real(bath, a)
        gp += pref * x2 * lambda_real(bath, -a)
    return RateSet(t, gp, gm, gd, alpha12=alphas, negative_rate_warning=_flag_negative(gp, gm, gd))


def lz_rates(frame: LriFrame, bath: BathSpec, t: float, channel: str = "x") -> RateSet:
    """Single-channel sign-switching rate: lowering when ``alpha_12 > 0``, raising otherwise."""
    return slow_phase_rates(frame, bath, t, channels=(channel,), convention="halved")


def dephasing_rates(bath: BathSpec, t: float) -> tuple[float, float]:
    """``(Gamma_D^R, Gamma_D^I)`` of the pure-dephasing model at zero temperature.

    ``t`` is the time elapsed since the bath was coupled.
    """
    if bath.temperature > 0:
        raise UnsupportedConfiguration("dephasing rates are only available at temperature = 0")
    if t < 0:
        raise ValueError("elapsed time must be non-negative")
    x2 = (bath.omega_c * t) ** 2
    re = bath.kappa * bath.omega_c**2 * t / (x2 + 1.0)
    im = bath.kappa * bath.omega_c**3 * t * t / (x2 + 1.0)
    return re, im


def dephasing_rate_set(bath: BathSpec, t: float, elapsed: float) -> RateSet:
    re, im = dephasing_rates(bath, elapsed)
    return RateSet(t, 0.0, 0.0, re, lamb_d=im)


def _tilde_element(frame: LriFrame, tau: float, channel: str, m: int, n: int) -> complex:
    eta, zeta = frame.angles(tau)
    xi = float(_xi_table(eta, zeta, channel)[m - 1, n - 1])
    th = float(phases(frame, tau)[channel][m - 1, n - 1])
    return xi * complex(math.cos(th), math.sin(th))


def memory_kernel_rate(
    frame: Optional[LriFrame],
    bath: BathSpec,
    t: float,
    s_max: Optional[float] = None,
    channel: str = "x",
    mn: tuple[int, int] = (1, 2),
    tol: float = 1e-8,
    t_start: Optional[float] = None,
) -> complex:
    """Truncated memory-kernel rate ``Gamma_{mn,mn}(t)``.

    The integrand is ``A_mn(t-s) conj(A_mn(t)) C(s)`` where ``A_mn`` is the
    interaction-picture element ``xi_mn e^{i theta_mn}``.  With
    ``channel="dephasing"`` the coupling is the invariant-diagonal operator
    with unit weight, so only ``mn = (1, 1)`` or ``(2, 2)`` are nonzero and
    ``frame`` may be ``None`` (pass ``t_start`` instead).

    ``s_max`` defaults to ``min(t - t_start, 10 / omega_c)``; the integration
    never reaches before ``t_start``.
    """
    m, n = mn
    if m not in (1, 2) or n not in (1, 2):
        raise ValueError(f"index pair {mn} out of range")
    if t_start is None:
        if frame is None:
            raise ValueError("either frame or t_start must be given")
        t_start = frame.t_start
    history = t - t_start
    if s_max is None:
        s_max = min(history, 10.0 / bath.omega_c)
    if s_max <= 0:
        raise ValueError(f"s_max must be positive, got {s_max}")
    s_max = min(s_max, history)
    if s_max <= 0:
        raise ValueError("no history available before t")

    if channel == "dephasing":
        if m != n:
            return 0j

        def weight(s):
            return 1.0 + 0j

    elif channel in CHANNELS:
        if frame is None:
            raise ValueError(f"channel {channel!r} needs an LRI frame")
        now = _tilde_element(frame, t, channel, m, n).conjugate()
        if now == 0:
            return 0j

        def weight(s):
            return _tilde_element(frame, t - s, channel, m, n) * now

    else:
        raise ValueError(f"unknown channel {channel!r}")

    def integrand(s):
        return weight(s) * correlation(bath, s)

    scale = max(bath.kappa * bath.omega_c, 1e-300)
    opts = dict(epsabs=tol * 1e-2 * scale, epsrel=tol, limit=500)
    re, _ = quad(lambda s: integrand(s).real, 0.0, s_max, **opts)
    im, _ = quad(lambda s: integrand(s).imag, 0.0, s_max, **opts)
    return complex(re, im)


def memory_kernel_rate_set(
    frame: Optional[LriFrame],
    bath: BathSpec,
    t: float,
    channels=CHANNELS,
    s_max: Optional[float] = None,
    t_start: Optional[float] = None,
) -> RateSet:
    """Secular rates from the memory kernel; negative rates are kept and flagged.

    For the x and y channels each jump rate is ``2 Re Gamma``.  For the
    dephasing channel ``Gamma_d = Re Gamma_{11,11}`` and the Lamb coefficient
    is ``-Im Gamma_{11,11}``, the normalization under which the closed-form
    dephasing rates are recovered.
    """
    t0 = frame.t_start if t_start is None else t_start
    if t - t0 <= 0:
        return RateSet(t, 0.0, 0.0, 0.0)
    gp = gm = gd = lamb_d = 0.0
    alphas = {}
    for j in channels:
        if j == "dephasing":
            g = memory_kernel_rate(None, bath, t, s_max, "dephasing", (1, 1), t_start=t0)
            gd += g.real
            lamb_d += -g.imag
            continue
        gm += 2.0 * memory_kernel_rate(frame, bath, t, s_max, j, (1, 2)).real
        gp += 2.0 * memory_kernel_rate(frame, bath, t, s_max, j, (2, 1)).real
        gd += 2.0 * memory_kernel_rate(frame, bath, t, s_max, j, (1, 1)).real
        try:
            alphas[j] = frequency_12(frame.kinematics(t), j)
        except DegenerateChannel:
            alphas[j] = math.nan
    return RateSet(
        t, gp, gm, gd, lamb_d=lamb_d, alpha12=alphas, negative_rate_warning=_flag_negative(gp, gm, gd)
    )


def rates_table(sets) -> np.ndarray:
    """Stack ``(t, Gamma_+, Gamma_-, Gamma_d)`` rows for a sequence of rate sets."""
    return np.array([[r.t, r.gamma_plus, r.gamma_minus, r.gamma_d] for r in sets])
