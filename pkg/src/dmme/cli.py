"""Command-line entry point: ``simulate run | sweep | selftest``."""

from __future__ import annotations

import argparse
import csv
import itertools
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .bath import UnsupportedConfiguration
from .coupling import DegenerateChannel
from .evolve import DegenerateHamiltonian, ProtocolNotInertial
from .lri import SingularEta
from .ode import IntegrationError
from .scenarios import ConfigError, load_config, override, run_scenario, summary_text, write_artifacts

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INTEGRATOR = 3
EXIT_CHECK = 4

INTEGRATOR_ERRORS = (IntegrationError, SingularEta, DegenerateHamiltonian, DegenerateChannel, FloatingPointError)
VALIDATION_ERRORS = (ConfigError, UnsupportedConfiguration, ProtocolNotInertial, ValueError)

SWEEP_FIELDS = ("final_rx", "final_ry", "final_rz", "final_rho11", "p11_exact")


def _err(msg: str) -> None:
    print(f"simulate: {msg}", file=sys.stderr)


def cmd_run(args) -> int:
    try:
        cfg = load_config(args.config)
        res = run_scenario(cfg)
    except INTEGRATOR_ERRORS as exc:
        _err(f"integrator failure: {exc}")
        return EXIT_INTEGRATOR
    except VALIDATION_ERRORS as exc:
        _err(f"invalid configuration: {exc}")
        return EXIT_VALIDATION
    out = Path(args.out)
    for path in write_artifacts(res, out):
        print(f"wrote {path}")
    sys.stdout.write(summary_text(res))
    if args.check and not res.passed:
        _err("one or more checks failed")
        return EXIT_CHECK
    return EXIT_OK


def _parse_axis(spec: str) -> tuple[str, list[float]]:
    key, sep, vals = spec.partition("=")
    if not sep or not vals.strip():
        raise ConfigError(f"axis {spec!r} must look like section.key=v1,v2,...")
    try:
        values = [float(v) for v in vals.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"axis {key.strip()!r} has non-numeric values") from None
    return key.strip().lower(), values


def _sweep_point(task):
    cfg, assignment = task
    row = {k: v for k, v in assignment}
    try:
        for key, value in assignment:
            cfg = override(cfg, key, value)
        res = run_scenario(cfg)
    except UnsupportedConfiguration as exc:
        row["status"] = "unsupported"
        row["message"] = str(exc)
        return row
    except INTEGRATOR_ERRORS as exc:
        row["status"] = "integrator-failure"
        row["message"] = str(exc)
        return row
    except (ConfigError, ValueError) as exc:
        row["status"] = "invalid"
        row["message"] = str(exc)
        return row
    row["status"] = "ok" if res.passed else "check-failed"
    row["message"] = ""
    for f in SWEEP_FIELDS:
        row[f] = res.summary.get(f, "")
    for name, value, _, ok in res.checks:
        row[f"check_{name}"] = value
    return row


def _cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def cmd_sweep(args) -> int:
    try:
        cfg = load_config(args.config)
        axes = [_parse_axis(a) for a in args.axis or []]
        if len(axes) > 3:
            raise ConfigError("at most three sweep axes are supported")
        keys = [k for k, _ in axes]
        if len(set(keys)) != len(keys):
            raise ConfigError("duplicate sweep axis")
        for k, vals in axes:
            override(cfg, k, vals[0])  # validates the field is numeric
    except VALIDATION_ERRORS as exc:
        _err(f"invalid sweep: {exc}")
        return EXIT_VALIDATION

    grid = list(itertools.product(*[[(k, v) for v in vals] for k, vals in axes]))
    tasks = [(cfg, list(point)) for point in grid]
    jobs = args.jobs or os.cpu_count() or 1
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            rows = list(pool.map(_sweep_point, tasks))
    else:
        rows = [_sweep_point(t) for t in tasks]

    header = list(keys) + ["status", "message"] + list(SWEEP_FIELDS)
    for r in rows:
        for k in r:
            if k.startswith("check_") and k not in header:
                header.append(k)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "sweep.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_cell(r.get(h, "")) for h in header])
    for r in rows:
        point = ", ".join(f"{k}={_cell(r[k])}" for k in keys) or "(base config)"
        print(f"{point}: {r['status']}" + (f" ({r['message']})" if r["message"] else ""))
    print(f"wrote {path}")
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all(out_dir=args.out)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="simulate", description="Driven master-equation simulator for two-level systems")
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run one scenario config")
    r.add_argument("config", help="INI config path or bundled name (dephasing, lz-adiabatic, lz-nonadiabatic, adiabatic, inertial)")
    r.add_argument("--check", action="store_true", help="exit 4 if any tolerance check fails")
    r.add_argument("--out", default="out", help="artifact directory (default: out)")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("sweep", help="run a scenario over a grid of numeric config values")
    s.add_argument("config")
    s.add_argument("--axis", action="append", help="section.key=v1,v2,... (repeatable, at most 3)")
    s.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
    s.add_argument("--out", default="sweep_out")
    s.set_defaults(func=cmd_sweep)

    t = sub.add_parser("selftest", help="run the acceptance checks and write their artifacts")
    t.add_argument("--out", default="selftest_out")
    t.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
