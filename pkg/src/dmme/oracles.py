"""Closed-form reference results used to validate the simulators."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bath import BathSpec, UnsupportedConfiguration

__all__ = ["LzPrediction", "lz_exact", "dephasing_gamma_e"]


@dataclass(frozen=True)
class LzPrediction:
    v: float
    omega0: float
    kappa: float
    omega_c: float
    w2: float
    p11: float


def lz_exact(v: float, omega0: float, kappa: float, omega_c: float) -> LzPrediction:
    """Zero-temperature survival probability on the diabatic state after a full sweep.

    The bath renormalizes the gap: ``W^2 = omega0^2 + kappa omega_c^2 / 4`` and
    ``P_11 = exp(-pi W^2 / (2 v))``.
    """
    if v <= 0:
        raise ValueError(f"sweep velocity must be positive, got {v}")
    if kappa < 0 or omega_c < 0:
        raise ValueError("kappa and omega_c must be non-negative")
    w2 = omega0 * omega0 + 0.25 * kappa * omega_c * omega_c
    return LzPrediction(v, omega0, kappa, omega_c, w2, math.exp(-math.pi * w2 / (2.0 * v)))


def dephasing_gamma_e(b: BathSpec, t: float) -> float:
    """Decoherence function ``(kappa / 2) ln(1 + omega_c^2 t^2)`` of the dephasing model."""
    if b.temperature > 0:
        raise UnsupportedConfiguration("the exact dephasing solution needs temperature = 0")
    if t < 0:
        raise ValueError("elapsed time must be non-negative")
    return 0.5 * b.kappa * math.log1p((b.omega_c * t) ** 2)
