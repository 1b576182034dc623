"""Acceptance suite: one test per criterion, each printing a pass/fail line."""

from __future__ import annotations

import subprocess
import sys
import time
from pathlib import Path

import pytest

from dmme import acceptance
from dmme.acceptance import CheckResult

from conftest import ACCEPTANCE_LINES


@pytest.fixture(scope="module", autouse=True)
def fresh_trajectory_log():
    acceptance._TRAJECTORIES.clear()
    yield


def report(r: CheckResult) -> None:
    line = r.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert r.passed, line


def test_criterion_01_dephasing_model():
    report(acceptance.run_check(1))


def test_criterion_02_rate_identity():
    report(acceptance.run_check(2))


def test_criterion_03_memory_kernel():
    report(acceptance.run_check(3))


def test_criterion_04_landau_zener_adiabatic():
    report(acceptance.run_check(4))


def test_criterion_05_landau_zener_nonadiabatic():
    report(acceptance.run_check(5))


def test_criterion_06_propagator_exactness():
    report(acceptance.run_check(6))


def test_criterion_07_invariant_suite():
    report(acceptance.run_check(7))


def test_criterion_08_adiabatic_limit():
    report(acceptance.run_check(8))


def test_criterion_09_inertial_limit():
    report(acceptance.run_check(9))


def test_criterion_10_selftest_twice_is_byte_identical(tmp_path):
    t0 = time.perf_counter()
    outs = []
    for name in ("first", "second"):
        out = tmp_path / name
        proc = subprocess.run(
            [sys.executable, "-m", "dmme.cli", "selftest", "--out", str(out)], capture_output=True, text=True
        )
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert "10/10 checks passed" in proc.stdout
        outs.append(out)
    names = sorted(p.name for p in outs[0].glob("*.csv"))
    assert names == sorted(p.name for p in outs[1].glob("*.csv")) and names
    same = [n for n in names if (outs[0] / n).read_bytes() == (outs[1] / n).read_bytes()]
    ok = same == names
    detail = f"selftest passed twice, {len(same)}/{len(names)} CSV artifacts byte-identical"
    report(CheckResult(10, "determinism", ok, detail, time.perf_counter() - t0))
