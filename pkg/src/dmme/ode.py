"""Adaptive Dormand-Prince 5(4) integrator with dense output.

Every accepted step keeps the coefficients of the method's quartic continuous
extension, so the solution and its time derivative are fourth-order accurate
between nodes.  A cubic Hermite interpolant built from node values and
derivatives is available as a fallback.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = ["IntegrationError", "OdeSolution", "integrate"]


class IntegrationError(RuntimeError):
    """Raised when the step size underflows or the step budget is exhausted."""

    def __init__(self, message: str, t: float):
        super().__init__(f"{message} at t={t:.12g}")
        self.t = t


# Dormand-Prince tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B = _A[6]
_E = (
    71 / 57600,
    0.0,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)

# quartic continuous extension: y(t0 + x h) = y0 + h K^T P [x, x^2, x^3, x^4]
_P = np.array(
    [
        [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
        [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
        [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
        [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
        [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
    ]
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0


@dataclass(frozen=True)
class OdeSolution:
    """Accepted nodes ``t``, states ``y`` (n_nodes x dim) and derivatives ``f``.

    ``q`` holds the per-step continuous-extension coefficients
    (n_nodes - 1 x dim x 4); without it the Hermite interpolant is used.
    """

    t: np.ndarray
    y: np.ndarray
    f: np.ndarray
    n_rhs: int = 0
    q: Optional[np.ndarray] = None
    interpolation: str = "quartic"

    def __post_init__(self):
        if self.q is None and self.interpolation == "quartic":
            object.__setattr__(self, "interpolation", "hermite")
        if self.interpolation not in ("quartic", "hermite"):
            raise ValueError(f"unknown interpolation {self.interpolation!r}")

    @property
    def t_start(self) -> float:
        return float(self.t[0])

    @property
    def t_end(self) -> float:
        return float(self.t[-1])

    def _locate(self, t: float) -> int:
        i = int(np.searchsorted(self.t, t, side="right")) - 1
        return min(max(i, 0), len(self.t) - 2)

    def __call__(self, t: float) -> np.ndarray:
        """Interpolated state at a scalar time."""
        if len(self.t) == 1:
            return self.y[0].copy()
        i = self._locate(t)
        t0 = self.t[i]
        h = self.t[i + 1] - t0
        s = (t - t0) / h
        if self.interpolation == "quartic":
            return self.y[i] + h * (self.q[i] @ np.array([s, s * s, s**3, s**4]))
        s2 = s * s
        s3 = s2 * s
        h00 = 2 * s3 - 3 * s2 + 1
        h10 = s3 - 2 * s2 + s
        h01 = -2 * s3 + 3 * s2
        h11 = s3 - s2
        return (
            h00 * self.y[i]
            + h10 * h * self.f[i]
            + h01 * self.y[i + 1]
            + h11 * h * self.f[i + 1]
        )

    def derivative(self, t: float) -> np.ndarray:
        """Time derivative of the interpolant."""
        i = self._locate(t)
        t0 = self.t[i]
        h = self.t[i + 1] - t0
        s = (t - t0) / h
        if self.interpolation == "quartic":
            return self.q[i] @ np.array([1.0, 2 * s, 3 * s * s, 4 * s**3])
        s2 = s * s
        d00 = (6 * s2 - 6 * s) / h
        d10 = 3 * s2 - 4 * s + 1
        d01 = (-6 * s2 + 6 * s) / h
        d11 = 3 * s2 - 2 * s
        return d00 * self.y[i] + d10 * self.f[i] + d01 * self.y[i + 1] + d11 * self.f[i + 1]

    def sample(self, times) -> np.ndarray:
        return np.array([self(float(t)) for t in times])


def _initial_step(fun, t0, y0, f0, direction, rtol, atol, span) -> float:
    # Hairer, Norsett & Wanner, Solving ODEs I, sec. II.4
    scale = atol + np.abs(y0) * rtol
    d0 = np.sqrt(np.mean((y0 / scale) ** 2))
    d1 = np.sqrt(np.mean((f0 / scale) ** 2))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, span)
    y1 = y0 + direction * h0 * f0
    f1 = fun(t0 + direction * h0, y1)
    d2 = np.sqrt(np.mean(((f1 - f0) / scale) ** 2)) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1 / 5)
    return min(100 * h0, h1, span)


def integrate(
    fun: Callable[[float, np.ndarray], np.ndarray],
    t_span: tuple[float, float],
    y0,
    rtol: float = 1e-8,
    atol: float = 1e-10,
    max_step: float = math.inf,
    first_step: Optional[float] = None,
    max_steps: int = 2_000_000,
    on_step: Optional[Callable[[float, np.ndarray], None]] = None,
) -> OdeSolution:
    """Integrate ``y' = fun(t, y)`` over ``t_span`` (forward only).

    ``on_step(t, y)`` is called after every accepted step and may raise to
    abort the integration.
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError(f"t_span must be increasing, got {t_span}")
    y = np.array(y0, dtype=float)
    f = np.asarray(fun(t0, y), dtype=float)
    n_rhs = 1
    if on_step is not None:
        on_step(t0, y)

    if first_step is None:
        h = _initial_step(fun, t0, y, f, 1.0, rtol, atol, min(t1 - t0, max_step))
        n_rhs += 1
    else:
        h = first_step
    h = min(h, max_step, t1 - t0)

    ts = [t0]
    ys = [y]
    fs = [f]
    qs = []
    t = t0
    k = [f] + [None] * 6
    steps = 0
    while t < t1:
        steps += 1
        if steps > max_steps:
            raise IntegrationError("step budget exhausted", t)
        min_step = 16 * np.spacing(max(abs(t), 1.0))
        if h < min_step:
            raise IntegrationError("step size underflow", t)
        if t + h > t1 or t1 - (t + h) < min_step:
            h = t1 - t

        k[0] = f
        for s in range(1, 6):
            dy = np.zeros_like(y)
            for j, a in enumerate(_A[s]):
                if a != 0.0:
                    dy += a * k[j]
            k[s] = fun(t + _C[s] * h, y + h * dy)
        y_new = y + h * sum(b * kk for b, kk in zip(_B, k[:6]) if b != 0.0)
        f_new = np.asarray(fun(t + h, y_new), dtype=float)
        k[6] = f_new
        n_rhs += 6

        err = h * sum(e * kk for e, kk in zip(_E, k) if e != 0.0)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err_norm = float(np.sqrt(np.mean((err / scale) ** 2)))
        if not np.isfinite(err_norm):
            h *= _MIN_FACTOR
            continue

        if err_norm <= 1.0:
            t_new = t1 if h == t1 - t else t + h
            if on_step is not None:
                on_step(t_new, y_new)
            t, y, f = t_new, y_new, f_new
            ts.append(t)
            ys.append(y)
            fs.append(f)
            qs.append(np.array(k).T @ _P)
            factor = _MAX_FACTOR if err_norm == 0.0 else min(_MAX_FACTOR, _SAFETY * err_norm ** -0.2)
            h = min(h * factor, max_step)
        else:
            h *= max(_MIN_FACTOR, _SAFETY * err_norm ** -0.2)

    return OdeSolution(np.array(ts), np.array(ys), np.array(fs), n_rhs, np.array(qs))
