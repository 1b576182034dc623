"""Closed and open time evolution of the driven two-level system.

Master equations are propagated in the Schroedinger picture on the eight real
components of the density matrix.  The generator is

    d rho/dt = -i[H + H_LS, rho] + G+ D[S+] rho + G- D[S-] rho + (Gd / 4) [S, [rho, S]]

where ``S- = |psi_1><psi_2|``, ``S+ = |psi_2><psi_1|`` and ``S = P_2 - P_1``
are built from the invariant eigenstates.  With this normalization a constant
``Gd`` damps the invariant-basis coherence as ``exp(-Gd t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import rates as _rates
from .bath import BathSpec, UnsupportedConfiguration, lambda_real
from .driving import DrivingProtocol
from .lri import LriFrame, adiabatic_angles, propagator, states_from_angles
from .ode import integrate
from .oracles import dephasing_gamma_e
from .qlinalg import SIGMA_X, SIGMA_Y, SIGMA_Z, DensityMatrix, bloch_of, commutator, outer, projector

__all__ = [
    "POSITIVITY_TOL",
    "RATE_SOURCES",
    "Trajectory",
    "LindbladSet",
    "DegenerateHamiltonian",
    "ProtocolNotInertial",
    "InertialReport",
    "schrodinger_evolve",
    "lindblad_set",
    "dmme_evolve",
    "ame_evolve",
    "inertial_consistency",
    "inertial_angles",
    "dephasing_exact",
]

POSITIVITY_TOL = 1e-6
RATE_SOURCES = ("slow_phase", "lz", "dephasing", "memory_kernel")
DEFAULT_POINTS = 201


class DegenerateHamiltonian(ArithmeticError):
    def __init__(self, t: float):
        super().__init__(f"Delta = Omega = 0 at t={t:.12g}; instantaneous eigenbasis undefined")
        self.t = t


class ProtocolNotInertial(ValueError):
    pass


@dataclass(frozen=True)
class Trajectory:
    """Density-matrix samples plus per-point diagnostics (and rates for open runs)."""

    t: np.ndarray
    rho: np.ndarray
    rates: Optional[tuple] = None
    kind: str = ""
    psi: Optional[np.ndarray] = None
    n_rhs: int = 0
    trace_err: np.ndarray = field(init=False, repr=False)
    herm_err: np.ndarray = field(init=False, repr=False)
    min_eig: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        rho = self.rho
        tr = np.abs(np.trace(rho, axis1=1, axis2=2) - 1.0)
        herm = np.linalg.norm(rho - np.conj(np.transpose(rho, (0, 2, 1))), axis=(1, 2))
        hermitian_part = 0.5 * (rho + np.conj(np.transpose(rho, (0, 2, 1))))
        mins = np.linalg.eigvalsh(hermitian_part)[:, 0]
        object.__setattr__(self, "trace_err", tr)
        object.__setattr__(self, "herm_err", herm)
        object.__setattr__(self, "min_eig", mins)

    @property
    def positivity_violated(self) -> bool:
        return bool(np.any(self.min_eig < -POSITIVITY_TOL))

    @property
    def final(self) -> np.ndarray:
        return self.rho[-1]

    def bloch(self) -> np.ndarray:
        r = self.rho
        rx = 2.0 * r[:, 0, 1].real
        ry = -2.0 * r[:, 0, 1].imag
        rz = (r[:, 0, 0] - r[:, 1, 1]).real
        return np.stack([rx, ry, rz], axis=1)

    def rho11(self) -> np.ndarray:
        return self.rho[:, 0, 0].real.copy()


@dataclass(frozen=True)
class LindbladSet:
    sigma_plus: np.ndarray
    sigma_minus: np.ndarray
    sigma_z: np.ndarray

    def commutator_factor(self) -> complex:
        """``c`` in ``[Sigma_z, Sigma_+] = c Sigma_+`` (2 for the projector form)."""
        lhs = commutator(self.sigma_z, self.sigma_plus)
        k = np.unravel_index(np.argmax(np.abs(self.sigma_plus)), (2, 2))
        return complex(lhs[k] / self.sigma_plus[k])


def _as_rho(rho0) -> np.ndarray:
    if isinstance(rho0, DensityMatrix):
        return np.array(rho0.mat)
    return np.array(DensityMatrix(np.asarray(rho0, dtype=complex)).mat)


def _output_grid(t_start: float, t_end: float, t_eval) -> np.ndarray:
    if t_eval is None:
        return np.linspace(t_start, t_end, DEFAULT_POINTS)
    ts = np.asarray(t_eval, dtype=float)
    if ts.ndim != 1 or len(ts) == 0:
        raise ValueError("t_eval must be a non-empty 1-d sequence")
    if np.any(np.diff(ts) < 0):
        raise ValueError("t_eval must be non-decreasing")
    if ts[0] < t_start - 1e-9 or ts[-1] > t_end + 1e-9:
        raise ValueError(f"t_eval outside [{t_start}, {t_end}]")
    return ts


def _pack(rho: np.ndarray) -> np.ndarray:
    flat = rho.reshape(4)
    return np.concatenate([flat.real, flat.imag])


def _unpack(y: np.ndarray) -> np.ndarray:
    return (y[:4] + 1j * y[4:]).reshape(2, 2)


def schrodinger_evolve(
    p: DrivingProtocol,
    psi0,
    t_eval=None,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    max_step: float = math.inf,
) -> Trajectory:
    """Integrate ``i d psi/dt = H psi`` across the protocol window."""
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (2,) or abs(np.linalg.norm(psi0) - 1.0) > 1e-10:
        raise ValueError("psi0 must be a normalized 2-vector")
    fn = p._fn

    def rhs(t, y):
        d, o, _, _ = fn(t)
        a = complex(y[0], y[2])
        b = complex(y[1], y[3])
        da = -1j * (d * a + o * b)
        db = -1j * (o * a - d * b)
        return np.array([da.real, db.real, da.imag, db.imag])

    y0 = np.array([psi0[0].real, psi0[1].real, psi0[0].imag, psi0[1].imag])
    sol = integrate(rhs, p.window, y0, rtol=rtol, atol=atol, max_step=max_step)
    ts = _output_grid(p.t_start, p.t_end, t_eval)
    ys = sol.sample(ts)
    psi = ys[:, :2] + 1j * ys[:, 2:]
    rho = np.einsum("ti,tj->tij", psi, np.conj(psi))
    return Trajectory(ts, rho, kind="schrodinger", psi=psi, n_rhs=sol.n_rhs)


def lindblad_set(frame: LriFrame, t: float) -> LindbladSet:
    """Projector-form jump operators; the Lewis-Riesenfeld phases drop out of every dissipator."""
    p1, p2 = states_from_angles(*frame.angles(t))
    return LindbladSet(outer(p2, p1), outer(p1, p2), projector(p2) - projector(p1))


def _generator(h, p1, p2, rs, rho, lamb: bool):
    P1 = np.outer(p1, np.conj(p1))
    P2 = np.outer(p2, np.conj(p2))
    if lamb:
        h = h + rs.lamb_minus * P2 + rs.lamb_plus * P1 + rs.lamb_d * (P1 + P2)
    out = -1j * (h @ rho - rho @ h)
    if rs.gamma_minus != 0.0:
        # D[|1><2|] rho = <2|rho|2> P1 - {P2, rho}/2
        w = np.vdot(p2, rho @ p2).real
        out += rs.gamma_minus * (w * P1 - 0.5 * (P2 @ rho + rho @ P2))
    if rs.gamma_plus != 0.0:
        w = np.vdot(p1, rho @ p1).real
        out += rs.gamma_plus * (w * P2 - 0.5 * (P1 @ rho + rho @ P1))
    if rs.gamma_d != 0.0:
        s = P2 - P1
        # [S, [rho, S]] = 2 S rho S - {S^2, rho} and S^2 = 1
        out += 0.25 * rs.gamma_d * (2.0 * (s @ rho @ s) - 2.0 * rho)
    return out


def _rate_function(
    frame: LriFrame,
    bath: Optional[BathSpec],
    source,
    channels,
    convention: str,
    s_max,
    grid_points: Optional[int],
) -> Callable[[float], "_rates.RateSet"]:
    t0 = frame.t_start
    if callable(source):
        return source
    if source not in RATE_SOURCES:
        raise ValueError(f"unknown rate source {source!r}; expected one of {RATE_SOURCES}")
    if bath is None:
        raise ValueError(f"rate source {source!r} needs a bath")
    if source == "slow_phase":
        return lambda t: _rates.slow_phase_rates(frame, bath, t, channels, convention)
    if source == "lz":
        ch = channels[0] if channels else "x"
        return lambda t: _rates.slow_phase_rates(frame, bath, t, (ch,), convention)
    if source == "dephasing":
        if bath.temperature > 0:
            raise UnsupportedConfiguration("dephasing rates are only available at temperature = 0")
        return lambda t: _rates.dephasing_rate_set(bath, t, max(0.0, t - t0))
    return _memory_kernel_interpolant(frame, bath, channels, s_max, grid_points)


def _memory_kernel_interpolant(frame, bath, channels, s_max, grid_points):
    # rates are tabulated once and linearly interpolated inside the integrator
    n = grid_points
    if n is None:
        top = 0.0
        for t in np.linspace(frame.t_start, frame.t_end, 101):
            k = frame.kinematics(float(t))
            for j in channels:
                if j in ("x", "y"):
                    try:
                        top = max(top, abs(_rates.frequency_12(k, j)))
                    except _rates.DegenerateChannel:
                        pass
        span = frame.t_end - frame.t_start
        n = int(min(20001, max(201, math.ceil(span * top * 50.0 / (2 * math.pi)) + 1)))
    grid = np.linspace(frame.t_start, frame.t_end, n)
    sets = [_rates.memory_kernel_rate_set(frame, bath, float(t), channels, s_max) for t in grid]
    cols = np.array([[r.gamma_plus, r.gamma_minus, r.gamma_d, r.lamb_d] for r in sets])
    warn = any(r.negative_rate_warning for r in sets)

    def fn(t):
        gp, gm, gd, ld = (float(np.interp(t, grid, cols[:, c])) for c in range(4))
        return _rates.RateSet(t, gp, gm, gd, lamb_d=ld, negative_rate_warning=warn and min(gp, gm, gd) < 0)

    return fn


def dmme_evolve(
    frame: LriFrame,
    bath: Optional[BathSpec],
    rho0,
    rate_source: Union[str, Callable] = "slow_phase",
    channels: Sequence[str] = ("x", "y"),
    convention: Optional[str] = None,
    lamb: bool = False,
    s_max: Optional[float] = None,
    t_eval=None,
    rtol: float = 1e-8,
    atol: float = 1e-10,
    max_step: float = math.inf,
    grid_points: Optional[int] = None,
) -> Trajectory:
    """Driven Markovian master equation on the frame's time window.

    ``rate_source`` is one of ``slow_phase``, ``lz``, ``dephasing``,
    ``memory_kernel`` or a callable ``t -> RateSet``.  The ``lz`` source uses a
    single coupling channel (the first of ``channels``) and defaults to the
    ``halved`` convention; everything else defaults to ``standard``.
    """
    rho0 = _as_rho(rho0)
    if convention is None:
        convention = "halved" if rate_source == "lz" else "standard"
    if rate_source == "lz" and tuple(channels) == ("x", "y"):
        channels = ("x",)
    rate_fn = _rate_function(frame, bath, rate_source, tuple(channels), convention, s_max, grid_points)
    fn = frame.protocol._fn
    sol_fr = frame.solution

    def parts(t):
        y = sol_fr(t)
        p1, p2 = states_from_angles(float(y[0]), float(y[1]))
        d, o, _, _ = fn(t)
        h = np.array([[d, o], [o, -d]], dtype=complex)
        return h, p1, p2

    def rhs(t, y):
        h, p1, p2 = parts(t)
        g = _generator(h, p1, p2, rate_fn(t), _unpack(y), lamb)
        return _pack(g)

    sol = integrate(rhs, (frame.t_start, frame.t_end), _pack(rho0), rtol=rtol, atol=atol, max_step=max_step)
    ts = _output_grid(frame.t_start, frame.t_end, t_eval)
    rho = np.array([_unpack(y) for y in sol.sample(ts)])
    rsets = tuple(rate_fn(float(t)) for t in ts)
    return Trajectory(ts, rho, rates=rsets, kind="dmme", n_rhs=sol.n_rhs)


def _hamiltonian_states(d: float, o: float, t: float):
    try:
        eta, zeta = adiabatic_angles(d, o)
    except ValueError:
        raise DegenerateHamiltonian(t) from None
    return states_from_angles(eta, zeta)


def ame_evolve(
    p: DrivingProtocol,
    bath: BathSpec,
    rho0,
    t_eval=None,
    rtol: float = 1e-8,
    atol: float = 1e-10,
    max_step: float = math.inf,
) -> Trajectory:
    """Adiabatic master equation built on the instantaneous Hamiltonian eigenbasis.

    Emission and absorption rates are ``2 Lambda^R(+-2r)`` with
    ``r = sqrt(Delta^2 + Omega^2)``, i.e. ``2 gamma_0 (N + 1)`` and ``2 gamma_0 N``.
    """
    rho0 = _as_rho(rho0)
    fn = p._fn

    def rate_at(t, d, o):
        gap = 2.0 * math.hypot(d, o)
        return _rates.RateSet(
            t, 2.0 * lambda_real(bath, -gap), 2.0 * lambda_real(bath, gap), 0.0, alpha12={"y": gap}
        )

    def rhs(t, y):
        d, o, _, _ = fn(t)
        p1, p2 = _hamiltonian_states(d, o, t)
        h = np.array([[d, o], [o, -d]], dtype=complex)
        return _pack(_generator(h, p1, p2, rate_at(t, d, o), _unpack(y), False))

    sol = integrate(rhs, p.window, _pack(rho0), rtol=rtol, atol=atol, max_step=max_step)
    ts = _output_grid(p.t_start, p.t_end, t_eval)
    rho = np.array([_unpack(y) for y in sol.sample(ts)])
    rsets = tuple(rate_at(float(t), *p.delta_omega(float(t))) for t in ts)
    return Trajectory(ts, rho, rates=rsets, kind="ame", n_rhs=sol.n_rhs)


@dataclass(frozen=True)
class InertialReport:
    mu: float
    times: np.ndarray
    max_mu_drift: float
    max_geq_residual: float
    min_overlap_iteig: float
    min_overlap_angles: float


def adiabatic_parameter(p: DrivingProtocol, t: float) -> float:
    """``mu = (Omega dDelta - Delta dOmega) / (2 Wbar^3)`` with ``Wbar = sqrt(Delta^2 + Omega^2)``."""
    d, o, dd, do = p.eval(t)
    w = math.hypot(d, o)
    if w == 0.0:
        raise DegenerateHamiltonian(t)
    return (o * dd - d * do) / (2.0 * w**3)


def inertial_angles(d: float, o: float, mu: float) -> tuple[float, float]:
    """Invariant angles of the constant-``mu`` regime."""
    w = math.hypot(d, o)
    kb = math.sqrt(1.0 + mu * mu)
    zeta = math.atan2(-mu * w, o)
    eta = math.acos(-math.sqrt(2.0) / 2.0 * math.sqrt(max(0.0, (kb * w - d) / (kb * w))))
    return eta, zeta


def _inertial_state(d: float, o: float, mu: float) -> np.ndarray:
    w = math.hypot(d, o)
    kb = math.sqrt(1.0 + mu * mu)
    return np.array(
        [
            complex(-o, mu * w) / math.sqrt(2.0 * kb * w * (d + kb * w)),
            math.sqrt((d + kb * w) / (2.0 * kb * w)),
        ]
    )


def inertial_consistency(
    p: DrivingProtocol, mu: float, n: int = 21, h: Optional[float] = None, drift_tol: float = 1e-6
) -> InertialReport:
    """Check the constant-``mu`` invariant construction on a protocol.

    Angle derivatives use a five-point stencil of width ``h``.  The lowering
    invariant state is compared with the ``-1`` eigenvector of
    ``(H + mu Wbar sigma_y) / (kb Wbar)``.
    """
    if h is None:
        h = 1e-3 * p.duration
    ts = np.linspace(p.t_start + 2 * h, p.t_end - 2 * h, n)
    drift = max(abs(adiabatic_parameter(p, float(t)) - mu) for t in ts)
    if drift > drift_tol:
        raise ProtocolNotInertial(f"adiabatic parameter drifts by {drift:.3e} from mu={mu}")

    def angles(t):
        return inertial_angles(*p.delta_omega(t), mu)

    kb = math.sqrt(1.0 + mu * mu)
    worst_res = 0.0
    ov_it = ov_ang = 1.0
    for t in ts:
        t = float(t)
        stencil = np.array([angles(t + k * h) for k in (-2, -1, 1, 2)])
        stencil[:, 1] = np.unwrap(stencil[:, 1])
        deta, dzeta = (stencil[0] - 8 * stencil[1] + 8 * stencil[2] - stencil[3]) / (12 * h)
        d, o = p.delta_omega(t)
        eta, zeta = angles(t)
        r1 = deta - o * math.sin(zeta)
        r2 = math.sin(2 * eta) * (2 * d + dzeta) - 2 * o * math.cos(2 * eta) * math.cos(zeta)
        worst_res = max(worst_res, abs(r1), abs(r2))

        w = math.hypot(d, o)
        sz = (d * SIGMA_Z + o * SIGMA_X + mu * w * SIGMA_Y) / (kb * w)
        vals, vecs = np.linalg.eigh(sz)
        low = vecs[:, 0]
        ov_it = min(ov_it, abs(np.vdot(low, _inertial_state(d, o, mu))))
        ov_ang = min(ov_ang, abs(np.vdot(low, states_from_angles(eta, zeta)[0])))
    return InertialReport(mu, ts, drift, worst_res, ov_it, ov_ang)


def dephasing_exact(frame: LriFrame, bath: BathSpec, rho0, t_eval=None) -> Trajectory:
    """Exact pure-dephasing solution carried into the Schroedinger picture.

    Invariant-basis coherences decay as ``exp(-Gamma_e(t))``; the result is
    then rotated by the closed-system propagator.
    """
    if bath.temperature > 0:
        raise UnsupportedConfiguration("the exact dephasing solution needs temperature = 0")
    rho0 = _as_rho(rho0)
    q1, q2 = states_from_angles(*frame.initial_angles)
    P1, P2 = projector(q1), projector(q2)
    diag = P1 @ rho0 @ P1 + P2 @ rho0 @ P2
    coh = P1 @ rho0 @ P2 + P2 @ rho0 @ P1
    ts = _output_grid(frame.t_start, frame.t_end, t_eval)
    out = []
    for t in ts:
        decay = math.exp(-dephasing_gamma_e(bath, float(t) - frame.t_start))
        u = propagator(frame, float(t))
        out.append(u @ (diag + decay * coh) @ np.conj(u.T))
    return Trajectory(ts, np.array(out), kind="dephasing-exact")


def bloch_components(rho: np.ndarray) -> np.ndarray:
    return bloch_of(rho).as_array()
