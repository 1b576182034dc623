"""Config-driven scenarios: parse, validate, run, and serialize results."""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import numpy as np

from . import driving, evolve, lri
from .bath import BathSpec, UnsupportedConfiguration
from .coupling import CHANNELS, DegenerateChannel, frequency_12
from .oracles import lz_exact
from .qlinalg import state_of, trace_distance
from .svgplot import line_plot

__all__ = [
    "ConfigError",
    "ScenarioConfig",
    "ScenarioResult",
    "SCENARIOS",
    "CSV_COLUMNS",
    "parse_config",
    "load_config",
    "bundled_config",
    "run_scenario",
    "write_csv",
    "write_artifacts",
]

SCENARIOS = ("dephasing", "landau-zener", "adiabatic", "inertial-check", "custom")
CSV_COLUMNS = (
    "t", "rx", "ry", "rz", "rho11", "alpha12_x", "alpha12_y",
    "gamma_plus", "gamma_minus", "gamma_d", "trace_err", "min_eig",
)

CONFIG_DIR = Path(__file__).parent / "configs"


class ConfigError(ValueError):
    pass


def _bool(s: str) -> bool:
    v = s.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {s!r}")


def _vec3(s: str) -> tuple[float, float, float]:
    parts = [float(p) for p in s.replace(",", " ").split()]
    if len(parts) != 3:
        raise ValueError(f"expected three numbers, got {s!r}")
    return tuple(parts)


def _names(s: str) -> tuple[str, ...]:
    return tuple(p for p in s.replace(",", " ").split() if p)


# section -> key -> parser; float and int keys are the sweepable ones
SCHEMA: dict[str, dict[str, Any]] = {
    "scenario": {"name": str},
    "protocol": {
        "family": str,
        "delta": float,
        "delta0": float,
        "omega0": float,
        "omega_c": float,
        "t_start": float,
        "t_end": float,
        "v": float,
        "half_width": float,
        "mu": float,
        "omega_bar0": float,
        "growth": float,
        "phase0": float,
        "table": str,
    },
    "bath": {"kappa": float, "omega_c": float, "temperature": float, "omega_l": float},
    "initial": {"bloch": _vec3, "lri_state": int},
    "integrator": {"rtol": float, "atol": float, "points": int, "max_step": float},
    "rates": {"source": str, "convention": str, "channels": _names, "lamb": _bool, "s_max": float},
    "check": {"tolerance": float, "closed_contrast": float},
    "output": {"csv": str, "reference_csv": str, "summary": str, "svg": str},
}

FAMILY_KEYS = {
    "constant": {"delta0", "omega0", "t_start", "t_end"},
    "sine-squared": {"delta", "omega0", "omega_c", "t_start", "t_end"},
    "landau-zener": {"v", "omega0", "half_width"},
    "inertial": {"mu", "omega_bar0", "growth", "phase0", "t_start", "t_end"},
    "custom-tabulated": {"table"},
}

DEFAULT_TOL = {
    "dephasing": 1e-3,
    "landau-zener": 0.03,
    "adiabatic": 1e-2,
    "inertial-check": 1e-8,
    "custom": 1e-8,
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario; ``raw`` keeps the text values (and line numbers) it came from."""

    name: str
    family: str
    protocol: dict
    bath: Optional[BathSpec]
    initial: dict
    integrator: dict
    rates: dict
    check: dict
    output: dict
    source: str = "<string>"
    base_dir: Path = Path(".")
    raw: dict = field(default_factory=dict, repr=False, compare=False)


def _scan_lines(text: str) -> dict:
    """Map ``(section, key)`` to the 1-based line number where it is set."""
    lines = {}
    section = None
    for i, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s[0] in "#;":
            continue
        if s.startswith("[") and s.endswith("]"):
            section = s[1:-1].strip().lower()
            lines[(section, None)] = i
            continue
        for sep in ("=", ":"):
            if sep in s:
                key = s.split(sep, 1)[0].strip().lower()
                lines[(section, key)] = i
                break
    return lines


def parse_config(text: str, source: str = "<string>", base_dir=".") -> ScenarioConfig:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from None
    where = _scan_lines(text)
    raw = {}
    for sec in cp.sections():
        raw[sec.lower()] = {k: (v, where.get((sec.lower(), k))) for k, v in cp[sec].items()}
    return build_config(raw, source, Path(base_dir))


def load_config(path) -> ScenarioConfig:
    p = Path(path)
    if not p.is_file():
        bundled = bundled_config(str(path))
        if bundled is None:
            raise ConfigError(f"config file {path} not found")
        p = bundled
    return parse_config(p.read_text(encoding="utf-8"), str(p), p.parent)


def bundled_config(name: str) -> Optional[Path]:
    stem = Path(name).stem
    cand = CONFIG_DIR / f"{stem}.ini"
    return cand if cand.exists() else None


def _loc(source: str, line) -> str:
    return f"{source}:{line}" if line else source


def build_config(raw: dict, source: str = "<string>", base_dir: Path = Path(".")) -> ScenarioConfig:
    typed: dict[str, dict] = {}
    for sec, items in raw.items():
        if sec not in SCHEMA:
            line = next((ln for _, ln in items.values() if ln), None)
            raise ConfigError(f"{_loc(source, line)}: unknown section [{sec}]")
        typed[sec] = {}
        for key, (text, line) in items.items():
            if key not in SCHEMA[sec]:
                raise ConfigError(f"{_loc(source, line)}: unknown key {sec}.{key}")
            try:
                typed[sec][key] = SCHEMA[sec][key](text.strip())
            except ValueError as exc:
                raise ConfigError(f"{_loc(source, line)}: invalid value for {sec}.{key}: {exc}") from None

    def line_of(sec, key):
        return raw.get(sec, {}).get(key, (None, None))[1]

    def fail(sec, key, msg):
        raise ConfigError(f"{_loc(source, line_of(sec, key))}: {sec}.{key}: {msg}")

    name = typed.get("scenario", {}).get("name")
    if name is None:
        raise ConfigError(f"{source}: missing scenario.name")
    if name not in SCENARIOS:
        fail("scenario", "name", f"unknown scenario {name!r}; expected one of {SCENARIOS}")

    prot = dict(typed.get("protocol", {}))
    default_family = {"dephasing": "sine-squared", "landau-zener": "landau-zener", "inertial-check": "inertial"}
    family = prot.pop("family", default_family.get(name))
    if family is None:
        fail("protocol", "family", "required for this scenario")
    if family not in FAMILY_KEYS:
        fail("protocol", "family", f"unknown or unsupported family {family!r}; expected one of {tuple(FAMILY_KEYS)}")
    if name == "landau-zener" and family != "landau-zener":
        fail("protocol", "family", "the landau-zener scenario needs the landau-zener family")
    if name == "inertial-check" and family != "inertial":
        fail("protocol", "family", "the inertial-check scenario needs the inertial family")
    for key in prot:
        if key not in FAMILY_KEYS[family]:
            fail("protocol", key, f"not a parameter of family {family!r}")
    if "v" in prot and prot["v"] <= 0:
        fail("protocol", "v", "must be > 0")
    if "t_start" in prot and "t_end" in prot and not prot["t_end"] > prot["t_start"]:
        fail("protocol", "t_end", "must exceed t_start")
    if "half_width" in prot and prot["half_width"] <= 0:
        fail("protocol", "half_width", "must be > 0")

    bath = None
    if "bath" in typed:
        b = typed["bath"]
        for key in ("kappa", "omega_c"):
            if key not in b:
                fail("bath", key, "required")
        if b["kappa"] < 0:
            fail("bath", "kappa", f"must be >= 0, got {b['kappa']}")
        if b["omega_c"] <= 0:
            fail("bath", "omega_c", f"must be > 0, got {b['omega_c']}")
        if b.get("temperature", 0.0) < 0:
            fail("bath", "temperature", f"must be >= 0, got {b['temperature']}")
        bath = BathSpec(b["kappa"], b["omega_c"], b.get("temperature", 0.0), b.get("omega_l", 0.0))
    elif name != "inertial-check":
        raise ConfigError(f"{source}: missing [bath] section")

    init = dict(typed.get("initial", {}))
    if "bloch" in init and "lri_state" in init:
        fail("initial", "lri_state", "give either bloch or lri_state, not both")
    if "bloch" in init:
        bx = init["bloch"]
        if math.fsum(c * c for c in bx) > 1.0 + 1e-7:
            fail("initial", "bloch", "Bloch vector lies outside the unit ball")
    if "lri_state" in init and init["lri_state"] not in (1, 2):
        fail("initial", "lri_state", "must be 1 or 2")
    if not init:
        init = {"bloch": (1.0, 0.0, 0.0)} if name == "dephasing" else {"lri_state": 1}

    integ = {"rtol": 1e-8, "atol": 1e-10, "points": 401, "max_step": math.inf}
    integ.update(typed.get("integrator", {}))
    for key in ("rtol", "atol", "max_step"):
        if not integ[key] > 0:
            fail("integrator", key, "must be > 0")
    if integ["points"] < 2:
        fail("integrator", "points", "must be at least 2")

    rates_default = {
        "dephasing": "dephasing",
        "landau-zener": "lz",
        "adiabatic": "slow_phase",
        "custom": "slow_phase",
        "inertial-check": "slow_phase",
    }[name]
    rates = {"source": rates_default, "lamb": False, "s_max": None}
    rates.update(typed.get("rates", {}))
    if rates["source"] not in evolve.RATE_SOURCES:
        fail("rates", "source", f"unknown rate source; expected one of {evolve.RATE_SOURCES}")
    if name == "dephasing" and rates["source"] != "dephasing":
        fail("rates", "source", "the dephasing scenario uses the dephasing rate source")
    if name == "adiabatic" and rates["source"] != "slow_phase":
        fail("rates", "source", "the adiabatic scenario uses slow_phase rates")
    if "channels" not in rates:
        rates["channels"] = {"lz": ("x",), "dephasing": ()}.get(rates["source"], ("y",) if name == "adiabatic" else CHANNELS)
    allowed = CHANNELS + (("dephasing",) if rates["source"] == "memory_kernel" else ())
    for c in rates["channels"]:
        if c not in allowed:
            fail("rates", "channels", f"unknown channel {c!r}")
    if "convention" not in rates:
        rates["convention"] = "halved" if rates["source"] == "lz" else "standard"
    if rates["convention"] not in ("standard", "halved"):
        fail("rates", "convention", "expected standard or halved")
    if rates["s_max"] is not None and rates["s_max"] <= 0:
        fail("rates", "s_max", "must be > 0")

    check = {"tolerance": DEFAULT_TOL[name]}
    check.update(typed.get("check", {}))
    if not check["tolerance"] > 0:
        fail("check", "tolerance", "must be > 0")

    output = {"csv": "trajectory.csv", "reference_csv": "reference.csv", "summary": "summary.txt", "svg": "plot.svg"}
    output.update(typed.get("output", {}))

    return ScenarioConfig(name, family, prot, bath, init, integ, rates, check, output, source, base_dir, raw)


def override(cfg: ScenarioConfig, key: str, value) -> ScenarioConfig:
    """Return a re-validated copy with ``section.key`` set to ``value``."""
    sec, _, k = key.partition(".")
    if not k:
        raise ConfigError(f"axis key {key!r} must look like section.key")
    sec, k = sec.lower(), k.lower()
    if sec not in SCHEMA or k not in SCHEMA[sec]:
        raise ConfigError(f"unknown config field {key!r}")
    if SCHEMA[sec][k] not in (float, int):
        raise ConfigError(f"config field {key!r} is not numeric")
    raw = {s: dict(items) for s, items in cfg.raw.items()}
    raw.setdefault(sec, {})[k] = (repr(value) if SCHEMA[sec][k] is float else str(int(value)), None)
    return build_config(raw, cfg.source, cfg.base_dir)


# ---------------------------------------------------------------------------
# execution


@dataclass
class ScenarioResult:
    config: ScenarioConfig
    summary: dict
    checks: list  # (name, value, bound, passed)
    trajectory: Optional[evolve.Trajectory] = None
    reference: Optional[evolve.Trajectory] = None
    frame: Optional[lri.LriFrame] = None
    plot: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(c[3] for c in self.checks)


def build_protocol(cfg: ScenarioConfig) -> driving.DrivingProtocol:
    p = cfg.protocol
    f = cfg.family
    if f == "constant":
        return driving.constant(p.get("delta0", 1.0), p.get("omega0", 1.0), p.get("t_start", 0.0), p.get("t_end", 1.0))
    if f == "sine-squared":
        return driving.sine_squared(
            p.get("delta", 1.0), p.get("omega0", 1.0), p.get("omega_c", 1.0), p.get("t_start", 0.0), p.get("t_end", 0.5)
        )
    if f == "landau-zener":
        return driving.landau_zener(p.get("v", 1.0), p.get("omega0", 1.0), p.get("half_width"))
    if f == "inertial":
        return driving.inertial(
            p.get("mu", 0.5), p.get("omega_bar0", 1.0), p.get("growth", 0.5), p.get("phase0", 1.2),
            p.get("t_start", 0.0), p.get("t_end", 1.0),
        )
    if f == "custom-tabulated":
        if "table" not in p:
            raise ConfigError(f"{cfg.source}: protocol.table is required for custom-tabulated")
        path = Path(p["table"])
        if not path.is_absolute():
            path = cfg.base_dir / path
        try:
            data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"{cfg.source}: cannot read protocol table {path}: {exc}") from None
        if data.shape[1] != 3:
            raise ConfigError(f"{cfg.source}: protocol table needs columns t, delta, omega")
        try:
            return driving.tabulated(data[:, 0], data[:, 1], data[:, 2])
        except ValueError as exc:
            raise ConfigError(f"{cfg.source}: {exc}") from None
    raise ConfigError(f"unsupported family {f!r}")


def _initial_rho(cfg: ScenarioConfig, frame: lri.LriFrame) -> np.ndarray:
    if "bloch" in cfg.initial:
        return np.array(state_of(cfg.initial["bloch"]).mat)
    psi = lri.eigenstates(frame, frame.t_start)[cfg.initial["lri_state"] - 1]
    return np.outer(psi, np.conj(psi))


def _grid(frame_or_protocol, n: int) -> np.ndarray:
    return np.linspace(frame_or_protocol.t_start, frame_or_protocol.t_end, n)


def frame_alphas(frame: lri.LriFrame, ts) -> np.ndarray:
    out = np.full((len(ts), 2), np.nan)
    for i, t in enumerate(ts):
        k = frame.kinematics(float(t))
        for c, j in enumerate(CHANNELS):
            try:
                out[i, c] = frequency_12(k, j)
            except DegenerateChannel:
                pass
    return out


def _final_state_summary(traj: evolve.Trajectory) -> dict:
    r = traj.bloch()[-1]
    return {
        "final_t": float(traj.t[-1]),
        "final_rx": float(r[0]),
        "final_ry": float(r[1]),
        "final_rz": float(r[2]),
        "final_rho11": float(traj.rho[-1, 0, 0].real),
        "max_trace_err": float(traj.trace_err.max()),
        "max_herm_err": float(traj.herm_err.max()),
        "min_eig": float(traj.min_eig.min()),
        "positivity_violated": traj.positivity_violated,
        "n_rhs": traj.n_rhs,
    }


def _dmme(cfg, frame, rho0, ts, lamb=None):
    r = cfg.rates
    return evolve.dmme_evolve(
        frame, cfg.bath, rho0,
        rate_source=r["source"], channels=r["channels"], convention=r["convention"],
        lamb=r["lamb"] if lamb is None else lamb, s_max=r["s_max"], t_eval=ts,
        rtol=cfg.integrator["rtol"], atol=cfg.integrator["atol"], max_step=cfg.integrator["max_step"],
    )


def _solve_frame(cfg, protocol):
    return lri.solve_lri(protocol, rtol=min(cfg.integrator["rtol"], 1e-8), atol=min(cfg.integrator["atol"], 1e-10))


def _diagnostic_checks(traj) -> list:
    return [
        ("max_trace_err", float(traj.trace_err.max()), 1e-8, bool(traj.trace_err.max() <= 1e-8)),
        ("max_herm_err", float(traj.herm_err.max()), 1e-10, bool(traj.herm_err.max() <= 1e-10)),
    ]


def run_scenario(cfg: ScenarioConfig) -> ScenarioResult:
    """Execute a validated scenario; raises integrator and configuration errors unchanged."""
    runner = {
        "dephasing": _run_dephasing,
        "landau-zener": _run_lz,
        "adiabatic": _run_adiabatic,
        "inertial-check": _run_inertial,
        "custom": _run_custom,
    }[cfg.name]
    return runner(cfg)


def _run_dephasing(cfg):
    if cfg.bath.temperature > 0:
        raise UnsupportedConfiguration("the dephasing scenario is only available at temperature = 0")
    p = build_protocol(cfg)
    frame = _solve_frame(cfg, p)
    ts = _grid(frame, cfg.integrator["points"])
    rho0 = _initial_rho(cfg, frame)
    traj = _dmme(cfg, frame, rho0, ts)
    toggled = _dmme(cfg, frame, rho0, ts, lamb=not cfg.rates["lamb"])
    exact = evolve.dephasing_exact(frame, cfg.bath, rho0, ts)
    gap = float(np.max(np.abs(traj.bloch() - exact.bloch())))
    lamb_gap = float(np.max(np.abs(traj.bloch() - toggled.bloch())))
    tol = cfg.check["tolerance"]
    summary = _final_state_summary(traj)
    summary.update({"sup_norm_gap_exact": gap, "lamb_toggle_gap": lamb_gap})
    checks = [("sup_norm_gap_exact", gap, tol, gap <= tol), ("lamb_toggle_gap", lamb_gap, 1e-9, lamb_gap <= 1e-9)]
    checks += _diagnostic_checks(traj)
    b_d, b_e = traj.bloch(), exact.bloch()
    series = []
    for c, lab in enumerate(("rx", "ry", "rz")):
        series.append((f"{lab} DMME", ts, b_d[:, c]))
        series.append((f"{lab} exact", ts, b_e[:, c], True))
    plot = line_plot(series, "Dephasing model: Bloch components", "t", "Bloch component")
    return ScenarioResult(cfg, summary, checks, traj, exact, frame, plot)


def _run_lz(cfg):
    p = build_protocol(cfg)
    frame = _solve_frame(cfg, p)
    ts = _grid(frame, cfg.integrator["points"])
    rho0 = _initial_rho(cfg, frame)
    traj = _dmme(cfg, frame, rho0, ts)
    psi0 = lri.eigenstates(frame, frame.t_start)[cfg.initial.get("lri_state", 1) - 1]
    if "bloch" in cfg.initial:
        closed = None
    else:
        closed = evolve.schrodinger_evolve(p, psi0, ts, rtol=1e-10, atol=1e-12)
    b = cfg.bath
    pred = lz_exact(cfg.protocol.get("v", 1.0), cfg.protocol.get("omega0", 1.0), b.kappa, b.omega_c)
    summary = _final_state_summary(traj)
    err = abs(summary["final_rho11"] - pred.p11)
    summary.update({"w2": pred.w2, "p11_exact": pred.p11, "abs_error_p11": err})
    tol = cfg.check["tolerance"]
    checks = [("abs_error_p11", err, tol, err <= tol)]
    if closed is not None:
        c11 = float(closed.rho[-1, 0, 0].real)
        contrast = abs(c11 - summary["final_rho11"])
        summary.update({"closed_rho11": c11, "closed_contrast": contrast})
        if "closed_contrast" in cfg.check:
            bound = cfg.check["closed_contrast"]
            checks.append(("closed_contrast", contrast, bound, contrast > bound))
    checks += _diagnostic_checks(traj)
    series = [("rho11 DMME", ts, traj.rho11())]
    if closed is not None:
        series.append(("rho11 closed", ts, closed.rho11(), True))
    series.append(("P11 exact", [ts[0], ts[-1]], [pred.p11, pred.p11], True))
    plot = line_plot(series, "Dissipative Landau-Zener sweep", "t", "rho11")
    return ScenarioResult(cfg, summary, checks, traj, closed, frame, plot)


def _run_adiabatic(cfg):
    p = build_protocol(cfg)
    frame = _solve_frame(cfg, p)
    ts = _grid(frame, cfg.integrator["points"])
    rho0 = _initial_rho(cfg, frame)
    traj = _dmme(cfg, frame, rho0, ts)
    ame = evolve.ame_evolve(p, cfg.bath, rho0, ts, rtol=cfg.integrator["rtol"], atol=cfg.integrator["atol"])
    dist = trace_distance(traj.final, ame.final)
    summary = _final_state_summary(traj)
    summary["final_trace_distance_ame"] = dist
    tol = cfg.check["tolerance"]
    checks = [("final_trace_distance_ame", dist, tol, dist <= tol)] + _diagnostic_checks(traj)
    plot = line_plot(
        [("rz DMME", ts, traj.bloch()[:, 2]), ("rz AME", ts, ame.bloch()[:, 2], True)],
        "DMME and adiabatic master equation", "t", "rz",
    )
    return ScenarioResult(cfg, summary, checks, traj, ame, frame, plot)


def _run_inertial(cfg):
    p = build_protocol(cfg)
    mu = p.params["mu"]
    rep = evolve.inertial_consistency(p, mu)
    tol = cfg.check["tolerance"]
    summary = {
        "mu": mu,
        "max_mu_drift": rep.max_mu_drift,
        "max_geq_residual": rep.max_geq_residual,
        "min_overlap_iteig": rep.min_overlap_iteig,
        "min_overlap_angles": rep.min_overlap_angles,
    }
    checks = [
        ("max_geq_residual", rep.max_geq_residual, tol, rep.max_geq_residual <= tol),
        ("min_overlap_iteig", rep.min_overlap_iteig, 1 - 1e-10, rep.min_overlap_iteig >= 1 - 1e-10),
    ]
    traj = None
    frame = None
    plot = None
    if cfg.bath is not None:
        frame = lri.solve_lri(p, init=evolve.inertial_angles(*p.delta_omega(p.t_start), mu))
        ts = _grid(frame, cfg.integrator["points"])
        traj = _dmme(cfg, frame, _initial_rho(cfg, frame), ts)
        summary.update(_final_state_summary(traj))
        checks += _diagnostic_checks(traj)
        plot = line_plot(
            [(lab, ts, traj.bloch()[:, c]) for c, lab in enumerate(("rx", "ry", "rz"))],
            "Constant adiabatic parameter drive", "t", "Bloch component",
        )
    return ScenarioResult(cfg, summary, checks, traj, None, frame, plot)


def _run_custom(cfg):
    p = build_protocol(cfg)
    frame = _solve_frame(cfg, p)
    ts = _grid(frame, cfg.integrator["points"])
    traj = _dmme(cfg, frame, _initial_rho(cfg, frame), ts)
    summary = _final_state_summary(traj)
    summary["negative_rate_warning"] = any(r.negative_rate_warning for r in traj.rates)
    plot = line_plot(
        [(lab, ts, traj.bloch()[:, c]) for c, lab in enumerate(("rx", "ry", "rz"))],
        "Driven master equation", "t", "Bloch component",
    )
    return ScenarioResult(cfg, summary, _diagnostic_checks(traj), traj, None, frame, plot)


# ---------------------------------------------------------------------------
# serialization


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    return str(v)


def trajectory_rows(traj: evolve.Trajectory, frame: Optional[lri.LriFrame]) -> np.ndarray:
    b = traj.bloch()
    n = len(traj.t)
    alphas = frame_alphas(frame, traj.t) if frame is not None else np.full((n, 2), np.nan)
    if traj.rates is not None:
        g = np.array([[r.gamma_plus, r.gamma_minus, r.gamma_d] for r in traj.rates])
    else:
        g = np.full((n, 3), np.nan)
    return np.column_stack([traj.t, b, traj.rho11(), alphas, g, traj.trace_err, traj.min_eig])


def write_csv(path, traj: evolve.Trajectory, frame: Optional[lri.LriFrame] = None) -> None:
    rows = trajectory_rows(traj, frame)
    lines = [",".join(CSV_COLUMNS)]
    lines += [",".join("%.17g" % v for v in row) for row in rows]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def summary_text(res: ScenarioResult) -> str:
    lines = [f"scenario: {res.config.name}", f"config: {res.config.source}"]
    lines += [f"{k}: {_fmt(v)}" for k, v in res.summary.items()]
    for name, value, bound, ok in res.checks:
        lines.append(f"check_{name}: {'pass' if ok else 'fail'} (value {_fmt(value)}, bound {_fmt(bound)})")
    lines.append(f"status: {'pass' if res.passed else 'fail'}")
    return "\n".join(lines) + "\n"


def write_artifacts(res: ScenarioResult, out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    o = res.config.output
    if res.trajectory is not None:
        path = out / o["csv"]
        write_csv(path, res.trajectory, res.frame)
        written.append(path)
    if res.reference is not None:
        path = out / o["reference_csv"]
        write_csv(path, res.reference, res.frame)
        written.append(path)
    path = out / o["summary"]
    path.write_text(summary_text(res), encoding="utf-8", newline="\n")
    written.append(path)
    if res.plot is not None:
        path = out / o["svg"]
        path.write_text(res.plot, encoding="utf-8", newline="\n")
        written.append(path)
    return written
