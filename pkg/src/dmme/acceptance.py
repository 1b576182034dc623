"""End-to-end acceptance checks, shared by ``simulate selftest`` and the test suite.

Each check returns a :class:`CheckResult`; ``run_all`` prints one line per check.
"""

from __future__ import annotations

import math
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

from . import driving, evolve, lri, rates
from .bath import BathSpec
from .oracles import dephasing_gamma_e
from .qlinalg import commutator, state_of, unitary_fidelity
from .scenarios import load_config, run_scenario, write_artifacts, write_csv

__all__ = ["CheckResult", "CHECKS", "run_check", "run_all"]


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    metrics: dict = field(default_factory=dict)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.number:2d} {self.title}: {self.detail} ({self.seconds:.1f} s)"


# master-equation trajectories produced along the way, for the diagnostics check
_TRAJECTORIES: list = []


def _record(traj):
    if traj is not None and traj.rates is not None:
        _TRAJECTORIES.append(traj)
    return traj


def dephasing_model(out_dir: Optional[Path] = None) -> CheckResult:
    t0 = time.perf_counter()
    res = run_scenario(load_config("dephasing"))
    elapsed = time.perf_counter() - t0
    _record(res.trajectory)
    if out_dir is not None:
        write_artifacts(res, out_dir)
    gap = res.summary["sup_norm_gap_exact"]
    lamb_gap = res.summary["lamb_toggle_gap"]
    ok = gap <= 1e-3 and lamb_gap <= 1e-9 and elapsed < 10.0
    detail = f"sup-norm gap {gap:.3e} (<= 1e-3), Lamb toggle gap {lamb_gap:.1e} (<= 1e-9), runtime {elapsed:.2f} s (< 10)"
    return CheckResult(1, "dephasing model vs exact solution", ok, detail, elapsed, {"gap": gap, "lamb_gap": lamb_gap})


def rate_identity(out_dir=None) -> CheckResult:
    worst = 0.0
    for b in (BathSpec(1.0, 20.0), BathSpec(0.3, 8.0)):
        for t in np.linspace(0.01, 10.0 / b.omega_c, 50):
            t = float(t)
            num, _ = quad(lambda tau: rates.dephasing_rates(b, tau)[0], 0.0, t, epsabs=1e-14, epsrel=1e-13, limit=200)
            worst = max(worst, abs(num - dephasing_gamma_e(b, t)))
    ok = worst <= 1e-10
    return CheckResult(2, "integrated dephasing rate equals decoherence function", ok, f"max |diff| {worst:.2e} (<= 1e-10)", metrics={"worst": worst})


def memory_kernel(out_dir=None) -> CheckResult:
    b = BathSpec(1.0, 20.0)
    worst = 0.0
    for x in np.linspace(0.5, 10.0, 20):
        t = float(x) / b.omega_c
        g = rates.memory_kernel_rate(None, b, t, s_max=t, channel="dephasing", mn=(1, 1), t_start=0.0)
        ref = rates.dephasing_rates(b, t)[0]
        worst = max(worst, abs(g.real - ref) / abs(ref))
    ok = worst <= 1e-3
    return CheckResult(3, "memory-kernel rate vs closed-form dephasing rate", ok, f"max rel err {worst:.2e} (<= 1e-3)", metrics={"worst": worst})


def _lz(name: str, out_dir):
    t0 = time.perf_counter()
    res = run_scenario(load_config(name))
    elapsed = time.perf_counter() - t0
    _record(res.trajectory)
    if out_dir is not None:
        write_artifacts(res, out_dir)
    return res, res.summary, elapsed


def lz_adiabatic(out_dir=None) -> CheckResult:
    res, s, elapsed = _lz("lz-adiabatic", out_dir)
    err = s["abs_error_p11"]
    ok = err <= 5e-3 and elapsed < 30.0
    detail = f"rho11 {s['final_rho11']:.3e} vs P11 {s['p11_exact']:.3e}, |diff| {err:.2e} (<= 5e-3), runtime {elapsed:.1f} s (< 30)"
    return CheckResult(4, "Landau-Zener adiabatic regime", ok, detail, elapsed, dict(s))


def lz_nonadiabatic(out_dir=None) -> CheckResult:
    res, s, elapsed = _lz("lz-nonadiabatic", out_dir)
    err = s["abs_error_p11"]
    contrast = s["closed_contrast"]
    ok = err <= 0.03 and contrast > 0.2
    detail = (
        f"rho11 {s['final_rho11']:.4f} vs P11 {s['p11_exact']:.4f}, |diff| {err:.3e} (<= 0.03); "
        f"closed-system rho11 {s['closed_rho11']:.4f}, contrast {contrast:.3f} (> 0.2)"
    )
    return CheckResult(5, "Landau-Zener non-adiabatic regime", ok, detail, elapsed, dict(s))


def sine_squared_protocol(t_end: float = 5.0) -> driving.DrivingProtocol:
    return driving.sine_squared(1.0, 1.0, 1.0, 0.0, t_end)


def propagator_exactness(out_dir=None) -> CheckResult:
    p = sine_squared_protocol()
    frame = lri.solve_lri(p, rtol=1e-11, atol=1e-13)
    ts = np.linspace(p.t_start, p.t_end, 20)
    cols = [evolve.schrodinger_evolve(p, e, ts, rtol=1e-11, atol=1e-13).psi for e in np.eye(2, dtype=complex)]
    psi0 = np.array([1.0, 1.0j]) / math.sqrt(2.0)
    psi = evolve.schrodinger_evolve(p, psi0, ts, rtol=1e-11, atol=1e-13).psi
    worst_f = 1.0
    worst_u = 0.0
    for i, t in enumerate(ts):
        u = lri.propagator(frame, float(t))
        u_num = np.column_stack([cols[0][i], cols[1][i]])
        worst_f = min(worst_f, unitary_fidelity(u, u_num), abs(np.vdot(psi[i], u @ psi0)) ** 2)
        worst_u = max(worst_u, float(np.linalg.norm(u.conj().T @ u - np.eye(2))))
    ok = worst_f >= 1 - 1e-6 and worst_u <= 1e-8
    detail = f"min fidelity 1 - {1 - worst_f:.2e} (>= 1 - 1e-6), unitarity defect {worst_u:.2e} (<= 1e-8)"
    return CheckResult(6, "invariant propagator vs direct integration", ok, detail, metrics={"fid": worst_f, "unit": worst_u})


def invariant_suite(out_dir=None) -> CheckResult:
    p = sine_squared_protocol()
    frame = lri.solve_lri(p, rtol=1e-12, atol=1e-14)
    h = 1e-4
    ts = np.linspace(p.t_start + 2 * h, p.t_end - 2 * h, 40)
    dis = 0.0
    for t in ts:
        t = float(t)
        d_inv = (lri.invariant_at(frame, t + h) - lri.invariant_at(frame, t - h)) / (2 * h)
        res = 1j * d_inv - commutator(p.hamiltonian(t), lri.invariant_at(frame, t))
        dis = max(dis, float(np.max(np.abs(res))))

    psi0 = np.array([0.6, 0.8j])
    sch = evolve.schrodinger_evolve(p, psi0, ts, rtol=1e-11, atol=1e-13)
    expect = [np.vdot(sch.psi[i], lri.invariant_at(frame, float(t)) @ sch.psi[i]).real for i, t in enumerate(ts)]
    drift = float(np.max(expect) - np.min(expect))

    # detailed balance in a thermal slow-phase configuration, y-only coupling
    thermal = BathSpec(0.2, 8.0, temperature=0.7)
    fr = lri.solve_lri(sine_squared_protocol(3.0))
    db = 0.0
    for t in np.linspace(0.0, 3.0, 60):
        rs = rates.slow_phase_rates(fr, thermal, float(t), channels=("y",))
        a = rs.alpha("y")
        if rs.gamma_plus > 1e-12 and rs.gamma_minus > 1e-12:
            db = max(db, abs(rs.gamma_minus / rs.gamma_plus / math.exp(a / thermal.temperature) - 1.0))
    traj = evolve.dmme_evolve(fr, thermal, state_of((0.0, 0.6, 0.8)), "slow_phase", channels=("y",))
    _record(traj)
    tr = max(float(t.trace_err.max()) for t in _TRAJECTORIES)
    he = max(float(t.herm_err.max()) for t in _TRAJECTORIES)
    ok = dis <= 1e-6 and drift <= 1e-6 and tr <= 1e-8 and he <= 1e-10 and db <= 1e-6
    detail = (
        f"invariant equation residual {dis:.1e}, <I> drift {drift:.1e}, trace err {tr:.1e}, "
        f"Hermiticity err {he:.1e} over {len(_TRAJECTORIES)} runs, detailed balance {db:.1e}"
    )
    return CheckResult(7, "invariant and trajectory diagnostics", ok, detail, metrics={"dis": dis, "drift": drift, "trace": tr, "herm": he, "db": db})


def adiabatic_limit(out_dir=None) -> CheckResult:
    worst = 0.0
    for d in np.linspace(-3.0, 3.0, 13):
        for o in (-2.0, -0.5, 0.3, 1.0, 2.5):
            eta, zeta = lri.adiabatic_angles(float(d), o)
            r1, r2 = lri.geq_residual(float(d), o, eta, zeta, 0.0, 0.0)
            worst = max(worst, abs(r1), abs(r2))
    res = run_scenario(load_config("adiabatic"))
    _record(res.trajectory)
    dist = res.summary["final_trace_distance_ame"]
    ok = worst <= 1e-10 and dist <= 1e-2
    detail = f"static fixed-point residual {worst:.1e} (<= 1e-10), slow-ramp DMME vs AME trace distance {dist:.2e} (<= 1e-2)"
    return CheckResult(8, "adiabatic limit", ok, detail, metrics={"geq": worst, "dist": dist})


def inertial_limit(out_dir=None) -> CheckResult:
    mu = 0.5
    rep = evolve.inertial_consistency(driving.inertial(mu), mu)
    ok = rep.max_geq_residual <= 1e-8 and rep.min_overlap_iteig >= 1 - 1e-10
    detail = f"angle-equation residual {rep.max_geq_residual:.1e} (<= 1e-8), eigenvector overlap 1 - {1 - rep.min_overlap_iteig:.1e}"
    return CheckResult(9, "inertial limit", ok, detail, metrics={"res": rep.max_geq_residual, "ov": rep.min_overlap_iteig})


def determinism(out_dir=None) -> CheckResult:
    blobs = []
    for _ in range(2):
        res = run_scenario(load_config("dephasing"))
        with tempfile.TemporaryDirectory() as d:
            path = Path(d) / "run.csv"
            write_csv(path, res.trajectory, res.frame)
            blobs.append(path.read_bytes())
    ok = blobs[0] == blobs[1]
    return CheckResult(10, "deterministic CSV output", ok, f"repeated run {'byte-identical' if ok else 'differs'} ({len(blobs[0])} bytes)")


CHECKS: dict[int, Callable] = {
    1: dephasing_model,
    2: rate_identity,
    3: memory_kernel,
    4: lz_adiabatic,
    5: lz_nonadiabatic,
    6: propagator_exactness,
    7: invariant_suite,
    8: adiabatic_limit,
    9: inertial_limit,
    10: determinism,
}


def run_check(number: int, out_dir=None) -> CheckResult:
    t0 = time.perf_counter()
    try:
        r = CHECKS[number](out_dir)
    except Exception as exc:  # a crash is a failed check, reported with its cause
        r = CheckResult(number, CHECKS[number].__name__.replace("_", " "), False, f"error: {type(exc).__name__}: {exc}")
    if not r.seconds:
        r.seconds = time.perf_counter() - t0
    return r


def run_all(out_dir=None, echo=print) -> list[CheckResult]:
    _TRAJECTORIES.clear()
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
    results = []
    for n in sorted(CHECKS):
        r = run_check(n, out_dir)
        results.append(r)
        if echo is not None:
            echo(r.line())
    return results
