"""Lewis-Riesenfeld invariant of the driven two-level system.

The invariant eigenstates are parameterized by two angles,

    |psi_1> = (cos(eta) e^{i zeta}, sin(eta))^T
    |psi_2> = (sin(eta) e^{i zeta}, -cos(eta))^T

which obey ``d eta/dt = Omega sin(zeta)`` and
``sin(2 eta) (2 Delta + d zeta/dt) = 2 Omega cos(2 eta) cos(zeta)``.
The Lewis-Riesenfeld phases are carried as two extra ODE components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .driving import DrivingProtocol
from .ode import OdeSolution, integrate
from .qlinalg import outer, projector

__all__ = [
    "SingularEta",
    "Kinematics",
    "LriFrame",
    "adiabatic_angles",
    "default_initial_angles",
    "solve_lri",
    "eigenstates",
    "states_from_angles",
    "propagator",
    "invariant_at",
    "geq_residual",
]

SINGULAR_SIN2ETA = 1e-6
RANGE_TOL = 1e-9


class SingularEta(ArithmeticError):
    """``sin(2 eta)`` vanished; the zeta equation cannot be continued."""

    def __init__(self, t: float, sin2eta: float):
        super().__init__(f"|sin(2 eta)| = {abs(sin2eta):.3e} below {SINGULAR_SIN2ETA:g} at t={t:.12g}")
        self.t = t
        self.sin2eta = sin2eta


class Kinematics(NamedTuple):
    """Everything the rate and generator code needs at one instant."""

    t: float
    delta: float
    omega: float
    eta: float
    zeta: float
    deta: float
    dzeta: float
    alpha1: float
    alpha2: float


def adiabatic_angles(delta: float, omega: float) -> tuple[float, float]:
    """Angles ``(eta, zeta)`` making ``|psi_1>`` the lower eigenstate of ``H_s``.

    ``zeta = 0`` and ``eta = arccos(-sqrt(2)/2 sqrt((r - Delta)/r))`` with
    ``r = sqrt(Delta^2 + Omega^2)``; that branch has ``sin(2 eta) <= 0`` and
    is the ground state for ``Omega >= 0``.  For ``Omega < 0`` the mirror
    angle ``pi - eta`` is returned.
    """
    r = math.hypot(delta, omega)
    if r == 0.0:
        raise ValueError("adiabatic angles undefined for Delta = Omega = 0")
    arg = max(0.0, (r - delta) / r)
    eta = math.acos(-math.sqrt(2.0) / 2.0 * math.sqrt(arg))
    if omega < 0:
        eta = math.pi - eta
    return eta, 0.0


def default_initial_angles(protocol: DrivingProtocol) -> tuple[float, float]:
    """Adiabatic point at ``t_start``, with ``Omega`` floored away from zero.

    When ``Omega(t_start)`` is (nearly) zero the adiabatic point sits on the
    ``sin(2 eta) = 0`` singularity, so ``max(|Omega|, 1e-3 max|Omega|)`` is
    used for the initialization only.
    """
    delta, omega = protocol.delta_omega(protocol.t_start)
    floor = 1e-3 * protocol.max_abs_omega()
    if abs(omega) < floor:
        omega = math.copysign(floor, omega) if omega != 0 else floor
    return adiabatic_angles(delta, omega)


def _angle_rates(delta: float, omega: float, eta: float, zeta: float, t: float) -> tuple[float, float]:
    s2 = math.sin(2.0 * eta)
    if s2 == 0.0:
        raise SingularEta(t, s2)
    deta = omega * math.sin(zeta)
    dzeta = 2.0 * omega * math.cos(2.0 * eta) / s2 * math.cos(zeta) - 2.0 * delta
    return deta, dzeta


def _phase_rates(delta, omega, eta, zeta, dzeta) -> tuple[float, float]:
    c2 = math.cos(2.0 * eta)
    mix = delta * c2 + omega * math.cos(zeta) * math.sin(2.0 * eta)
    ce = math.cos(eta)
    se = math.sin(eta)
    return (-dzeta * ce * ce - mix, -dzeta * se * se + mix)


@dataclass(frozen=True)
class LriFrame:
    """Solved invariant trajectory: angles and Lewis-Riesenfeld phases on a grid."""

    protocol: DrivingProtocol
    solution: OdeSolution
    initial_angles: tuple[float, float]
    omega_i: float = 1.0
    rtol: float = 1e-8
    atol: float = 1e-10
    interpolation: str = "quartic"
    # memo for derived tracks (unwrapped phases); values are deterministic
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def times(self) -> np.ndarray:
        return self.solution.t

    @property
    def t_start(self) -> float:
        return self.solution.t_start

    @property
    def t_end(self) -> float:
        return self.solution.t_end

    def _check(self, t: float) -> None:
        if t < self.t_start - RANGE_TOL or t > self.t_end + RANGE_TOL:
            raise ValueError(f"t={t!r} outside LRI frame range [{self.t_start}, {self.t_end}]")

    def state(self, t: float) -> np.ndarray:
        """Interpolated ``(eta, zeta, alpha_1, alpha_2)``."""
        self._check(t)
        return self.solution(t)

    def angles(self, t: float) -> tuple[float, float]:
        y = self.state(t)
        return float(y[0]), float(y[1])

    def lr_phases(self, t: float) -> tuple[float, float]:
        y = self.state(t)
        return float(y[2]), float(y[3])

    def kinematics(self, t: float) -> Kinematics:
        eta, zeta, a1, a2 = self.state(t)
        delta, omega, _, _ = self.protocol.eval(t)
        deta, dzeta = _angle_rates(delta, omega, eta, zeta, t)
        return Kinematics(t, delta, omega, float(eta), float(zeta), deta, dzeta, float(a1), float(a2))


def solve_lri(
    protocol: DrivingProtocol,
    init: Optional[tuple[float, float]] = None,
    rtol: float = 1e-8,
    atol: float = 1e-10,
    max_step: float = math.inf,
    omega_i: float = 1.0,
) -> LriFrame:
    """Integrate the invariant angles and phases across the protocol window.

    Raises :class:`SingularEta` if ``|sin(2 eta)|`` drops below ``1e-6`` at an
    accepted step.
    """
    if init is None:
        init = default_initial_angles(protocol)
    eta0, zeta0 = (float(v) for v in init)
    if abs(math.sin(2.0 * eta0)) < SINGULAR_SIN2ETA:
        raise SingularEta(protocol.t_start, math.sin(2.0 * eta0))
    fn = protocol._fn

    def rhs(t, y):
        delta, omega, _, _ = fn(t)
        eta, zeta = y[0], y[1]
        deta, dzeta = _angle_rates(delta, omega, eta, zeta, t)
        da1, da2 = _phase_rates(delta, omega, eta, zeta, dzeta)
        return np.array([deta, dzeta, da1, da2])

    def guard(t, y):
        s2 = math.sin(2.0 * y[0])
        if abs(s2) < SINGULAR_SIN2ETA:
            raise SingularEta(t, s2)

    sol = integrate(
        rhs,
        protocol.window,
        [eta0, zeta0, 0.0, 0.0],
        rtol=rtol,
        atol=atol,
        max_step=max_step,
        on_step=guard,
    )
    return LriFrame(protocol, sol, (eta0, zeta0), omega_i, rtol, atol, sol.interpolation)


def states_from_angles(eta: float, zeta: float) -> tuple[np.ndarray, np.ndarray]:
    ph = complex(math.cos(zeta), math.sin(zeta))
    c, s = math.cos(eta), math.sin(eta)
    return np.array([c * ph, s]), np.array([s * ph, -c])


def eigenstates(frame: LriFrame, t: float) -> tuple[np.ndarray, np.ndarray]:
    return states_from_angles(*frame.angles(t))


def propagator(frame: LriFrame, t: float) -> np.ndarray:
    """``U_s(t) = sum_n exp(i alpha_n(t)) |psi_n(t)><psi_n(0)|``."""
    eta, zeta, a1, a2 = frame.state(t)
    p1, p2 = states_from_angles(eta, zeta)
    q1, q2 = states_from_angles(*frame.initial_angles)
    return np.exp(1j * a1) * outer(p1, q1) + np.exp(1j * a2) * outer(p2, q2)


def invariant_at(frame: LriFrame, t: float) -> np.ndarray:
    p1, p2 = eigenstates(frame, t)
    return frame.omega_i * (projector(p1) - projector(p2))


def geq_residual(delta, omega, eta, zeta, deta, dzeta) -> tuple[float, float]:
    """Residuals of the two angle equations for given angles and their rates."""
    r1 = deta - omega * math.sin(zeta)
    r2 = math.sin(2 * eta) * (2 * delta + dzeta) - 2 * omega * math.cos(2 * eta) * math.cos(zeta)
    return r1, r2
