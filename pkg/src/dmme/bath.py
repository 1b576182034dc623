"""Ohmic reservoir with exponential cutoff.

``J(w) = kappa w exp(-|w| / omega_c)`` is odd in ``w``; the continuum coupling
strengths are folded into ``J``.  Temperatures are in frequency units
(``k_B = hbar = 1``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

__all__ = [
    "BathSpec",
    "UnsupportedConfiguration",
    "spectral_density",
    "planck",
    "occupation_plus_one",
    "lambda_real",
    "correlation",
]

FAMILIES = ("ohmic-exp-cutoff",)

QUAD_EPSABS = 1e-10
QUAD_EPSREL = 1e-8


class UnsupportedConfiguration(ValueError):
    """A configuration that is well-formed but outside what the models cover."""


@dataclass(frozen=True)
class BathSpec:
    kappa: float
    omega_c: float
    temperature: float = 0.0
    omega_l: float = 0.0
    family: str = "ohmic-exp-cutoff"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family: unknown spectral density family {self.family!r}")
        for name in ("kappa", "omega_c", "temperature", "omega_l"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name}: must be finite")
        if self.kappa < 0:
            raise ValueError(f"kappa: must be >= 0, got {self.kappa}")
        if self.omega_c <= 0:
            raise ValueError(f"omega_c: must be > 0, got {self.omega_c}")
        if self.temperature < 0:
            raise ValueError(f"temperature: must be >= 0, got {self.temperature}")


def spectral_density(b: BathSpec, w: float) -> float:
    return b.kappa * w * math.exp(-abs(w) / b.omega_c)


def planck(b: BathSpec, w: float) -> float:
    """Bose occupation ``1 / (exp(w/T) - 1)``, with its ``T -> 0`` limits."""
    T = b.temperature
    if T == 0.0:
        if w > 0:
            return 0.0
        if w < 0:
            return -1.0
        raise ValueError("planck: occupation at w = 0 is undefined")
    if w == 0.0:
        raise ValueError(f"planck: pole at w = 0 for temperature {T}")
    return 1.0 / math.expm1(w / T)


def occupation_plus_one(b: BathSpec, w: float) -> float:
    """``N(w) + 1``, written so that it stays accurate for large ``|w| / T``."""
    T = b.temperature
    if T == 0.0:
        return 1.0 if w > 0 else 0.0
    x = w / T
    if x < -700.0:
        return -math.exp(x)
    return -1.0 / math.expm1(-x)


def _j_times_n1(b: BathSpec, w: float) -> float:
    # J(w) (N(w) + 1), continuous through w = 0 where it tends to kappa T
    if w == 0.0:
        return b.kappa * b.temperature
    return spectral_density(b, w) * occupation_plus_one(b, w)


def lambda_real(b: BathSpec, alpha: float) -> float:
    """Real part of the one-sided reservoir transform, ``pi J(a) (N(a + w_L) + 1)``."""
    if b.omega_l == 0.0:
        return math.pi * _j_times_n1(b, alpha)
    shifted = alpha + b.omega_l
    if b.temperature > 0 and shifted == 0.0:
        raise ValueError("lambda_real: occupation pole at alpha + omega_l = 0")
    return math.pi * spectral_density(b, alpha) * occupation_plus_one(b, shifted)


def _correlation_closed(b: BathSpec, s: float) -> complex:
    x = b.omega_c * s
    den = (1.0 + x * x) ** 2
    oc2 = b.omega_c * b.omega_c
    return complex(b.kappa * oc2 * (1.0 - x * x) / den, -2.0 * b.kappa * oc2 * x / den)


def _correlation_quad(b: BathSpec, s: float) -> complex:
    w_max = 50.0 * max(b.omega_c, b.temperature)
    T = b.temperature

    def coth_weight(w):
        if T == 0.0:
            return 1.0
        if w == 0.0:
            return 0.0
        return 1.0 / math.tanh(w / (2.0 * T))

    def re(w):
        if T > 0 and w == 0.0:
            # J(w) coth(w / 2T) -> 2 kappa T
            return 2.0 * b.kappa * T * math.cos(w * s)
        return spectral_density(b, w) * coth_weight(w) * math.cos(w * s)

    def im(w):
        return -spectral_density(b, w) * math.sin(w * s)

    opts = dict(epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=1000)
    r, _ = quad(re, 0.0, w_max, **opts)
    i, _ = quad(im, 0.0, w_max, **opts)
    return complex(r, i)


def correlation(b: BathSpec, s: float, method: str = "auto") -> complex:
    """Reservoir correlation ``C(s) = int_0^inf J(w)[(2N+1) cos(ws) - i sin(ws)] dw``.

    ``method`` is ``"closed"`` (zero temperature only), ``"quad"`` or ``"auto"``.
    """
    if method == "auto":
        method = "closed" if b.temperature == 0.0 else "quad"
    if method == "closed":
        if b.temperature != 0.0:
            raise UnsupportedConfiguration("closed-form correlation requires temperature = 0")
        return _correlation_closed(b, s)
    if method == "quad":
        return _correlation_quad(b, s)
    raise ValueError(f"unknown correlation method {method!r}")
