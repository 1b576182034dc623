from __future__ import annotations

import math

import numpy as np
import pytest

from dmme import driving, evolve, lri, rates
from dmme.bath import BathSpec, UnsupportedConfiguration
from dmme.oracles import dephasing_gamma_e
from dmme.qlinalg import SIGMA_Z, state_of, trace_distance

PLUS = state_of((1.0, 0.0, 0.0))


def test_schrodinger_eigenstate_phase():
    p = driving.constant(1.0, 0.0, 0.0, 3.0)
    tr = evolve.schrodinger_evolve(p, [1.0, 0.0], np.linspace(0, 3, 7))
    for t, psi in zip(tr.t, tr.psi):
        assert psi == pytest.approx([np.exp(-1j * t), 0.0], abs=1e-9)
    assert np.allclose(tr.rho11(), 1.0)
    with pytest.raises(ValueError):
        evolve.schrodinger_evolve(p, [1.0, 1.0])


def test_closed_landau_zener_follows_invariant_state():
    p = driving.landau_zener(1.0, 0.2)
    frame = lri.solve_lri(p, rtol=1e-10, atol=1e-12)
    psi0 = lri.eigenstates(frame, p.t_start)[0]
    tr = evolve.schrodinger_evolve(p, psi0, [p.t_end])
    p1 = lri.eigenstates(frame, p.t_end)[0]
    assert abs(tr.psi[-1][0]) ** 2 == pytest.approx(abs(p1[0]) ** 2, abs=2e-3)


def test_unitary_limit(sine_frame, sine_protocol):
    zero = lambda t: rates.RateSet(t, 0.0, 0.0, 0.0)
    ts = np.linspace(0, 5, 11)
    open_run = evolve.dmme_evolve(sine_frame, None, PLUS, zero, t_eval=ts, rtol=1e-10, atol=1e-12)
    closed = evolve.schrodinger_evolve(sine_protocol, np.array([1, 1]) / math.sqrt(2), ts)
    for a, b in zip(open_run.rho, closed.rho):
        assert trace_distance(a, b) <= 1e-7


def test_lindblad_set_examples():
    frame = lri.solve_lri(driving.constant(1.0, 0.0, 0.0, 1.0), init=(1e-3, 0.0))
    ls = evolve.lindblad_set(frame, 0.0)
    assert np.allclose(ls.sigma_z, -SIGMA_Z, atol=3e-3)
    assert np.array_equal(ls.sigma_minus.conj().T, ls.sigma_plus)
    assert ls.commutator_factor() == pytest.approx(2.0)


def test_static_ame_equals_dmme():
    d, o = 0.6, 0.8
    p = driving.constant(d, o, 0.0, 6.0)
    b = BathSpec(0.1, 8.0, temperature=0.5)
    frame = lri.solve_lri(p, rtol=1e-11, atol=1e-13)
    ts = np.linspace(0, 6, 13)
    a = evolve.ame_evolve(p, b, PLUS, ts, rtol=1e-10, atol=1e-12)
    m = evolve.dmme_evolve(frame, b, PLUS, "slow_phase", channels=("y",), t_eval=ts, rtol=1e-10, atol=1e-12)
    assert max(trace_distance(x, y) for x, y in zip(a.rho, m.rho)) <= 1e-6


def test_ame_relaxes_to_ground_state_at_zero_temperature():
    p = driving.constant(0.0, 1.0, 0.0, 40.0)
    tr = evolve.ame_evolve(p, BathSpec(0.1, 8.0), PLUS)
    assert all(r.gamma_plus == 0.0 for r in tr.rates)
    ground = state_of((-1.0, 0.0, 0.0)).mat
    assert trace_distance(tr.final, ground) < 1e-3


def test_ame_degenerate_hamiltonian():
    p = driving.constant(0.0, 0.0, 0.0, 1.0)
    with pytest.raises(evolve.DegenerateHamiltonian):
        evolve.ame_evolve(p, BathSpec(0.1, 8.0), PLUS)


def test_trajectory_diagnostics(sine_frame):
    tr = evolve.dmme_evolve(sine_frame, BathSpec(0.1, 8.0), PLUS)
    assert tr.trace_err.max() <= 1e-8
    assert tr.herm_err.max() <= 1e-10
    assert not tr.positivity_violated
    assert len(tr.t) == evolve.DEFAULT_POINTS and len(tr.rates) == len(tr.t)
    bad = evolve.Trajectory(np.array([0.0]), np.array([np.diag([1.1, -0.1])]))
    assert bad.positivity_violated


def test_dephasing_exact_start_and_decay():
    b = BathSpec(1.0, 20.0)
    p = driving.constant(1.0, 0.0, 0.0, 1.0)
    frame = lri.solve_lri(p, init=(math.pi / 4, math.pi / 2), rtol=1e-11, atol=1e-13)
    rho0 = state_of((0.0, 0.0, 1.0))  # sigma_z state has equal invariant populations
    tr = evolve.dephasing_exact(frame, b, rho0, [0.0, 1.0])
    assert np.allclose(tr.rho[0], rho0.mat, atol=1e-12)
    # coherence in the invariant basis shrinks by exp(-Gamma_e)
    q1, q2 = lri.eigenstates(frame, 1.0)
    coh1 = abs(np.vdot(q1, tr.rho[1] @ q2))
    q1, q2 = lri.eigenstates(frame, 0.0)
    coh0 = abs(np.vdot(q1, tr.rho[0] @ q2))
    assert coh1 / coh0 == pytest.approx(math.exp(-dephasing_gamma_e(b, 1.0)), rel=1e-8)
    with pytest.raises(UnsupportedConfiguration):
        evolve.dephasing_exact(frame, BathSpec(1.0, 20.0, temperature=1.0), rho0)


def test_dephasing_model_lamb_shift_is_a_no_op(sine_frame):
    b = BathSpec(1.0, 20.0)
    frame = lri.solve_lri(driving.sine_squared(1.0, 1.0, 1.0, 0.0, 0.5))
    off = evolve.dmme_evolve(frame, b, PLUS, "dephasing")
    on = evolve.dmme_evolve(frame, b, PLUS, "dephasing", lamb=True)
    assert np.max(np.abs(off.rho - on.rho)) <= 1e-9
    exact = evolve.dephasing_exact(frame, b, PLUS)
    assert np.max(np.abs(off.bloch() - exact.bloch())) <= 1e-3


def test_unknown_rate_source(sine_frame):
    with pytest.raises(ValueError):
        evolve.dmme_evolve(sine_frame, BathSpec(0.1, 8.0), PLUS, "nope")
    with pytest.raises(ValueError):
        evolve.dmme_evolve(sine_frame, None, PLUS, "slow_phase")
    with pytest.raises(ValueError):
        evolve.dmme_evolve(sine_frame, BathSpec(0.1, 8.0), PLUS, t_eval=[0.0, 6.0])


def test_inertial_consistency():
    rep = evolve.inertial_consistency(driving.constant(0.5, 1.0, 0.0, 2.0), 0.0)
    assert rep.max_geq_residual <= 1e-10
    assert rep.min_overlap_angles == pytest.approx(1.0, abs=1e-10)
    rep = evolve.inertial_consistency(driving.inertial(0.5), 0.5)
    assert rep.max_geq_residual <= 1e-8
    assert rep.min_overlap_iteig == pytest.approx(1.0, abs=1e-10)
    assert rep.min_overlap_angles == pytest.approx(1.0, abs=1e-10)


def test_protocol_not_inertial(sine_protocol):
    with pytest.raises(evolve.ProtocolNotInertial):
        evolve.inertial_consistency(sine_protocol, 0.0)


def test_adiabatic_parameter_of_static_drive():
    assert evolve.adiabatic_parameter(driving.constant(1.0, 1.0), 0.3) == 0.0
