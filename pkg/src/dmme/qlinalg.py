"""Dense 2x2 complex linear algebra for two-level systems.

Matrices are plain ``numpy`` arrays of shape ``(2, 2)`` and kets are arrays of
shape ``(2,)``. Basis convention: ``|1> = (1, 0)^T`` and ``|0> = (0, 1)^T`` so
that ``sigma_z |1> = |1>``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "IDENTITY",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "KET_1",
    "KET_0",
    "BlochVector",
    "DensityMatrix",
    "dagger",
    "commutator",
    "anticommutator",
    "outer",
    "projector",
    "is_hermitian",
    "is_unitary",
    "bloch_of",
    "state_of",
    "trace_distance",
    "unitary_fidelity",
]


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=complex)
    arr.flags.writeable = False
    return arr


IDENTITY = _frozen([[1, 0], [0, 1]])
SIGMA_X = _frozen([[0, 1], [1, 0]])
SIGMA_Y = _frozen([[0, -1j], [1j, 0]])
SIGMA_Z = _frozen([[1, 0], [0, -1]])
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

KET_1 = _frozen([1, 0])
KET_0 = _frozen([0, 1])

STATE_TOL = 1e-7


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(m))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def outer(ket: np.ndarray, bra: np.ndarray) -> np.ndarray:
    """Return ``|ket><bra|``."""
    return np.outer(ket, np.conj(bra))


def projector(ket: np.ndarray) -> np.ndarray:
    return np.outer(ket, np.conj(ket))


def is_hermitian(m: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(m - dagger(m))) <= tol)


def is_unitary(m: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(np.linalg.norm(dagger(m) @ m - IDENTITY) <= tol)


@dataclass(frozen=True)
class BlochVector:
    rx: float
    ry: float
    rz: float

    def __iter__(self):
        return iter((self.rx, self.ry, self.rz))

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.rx**2 + self.ry**2 + self.rz**2))

    def as_array(self) -> np.ndarray:
        return np.array([self.rx, self.ry, self.rz])


@dataclass(frozen=True)
class DensityMatrix:
    """Validated, read-only 2x2 density matrix."""

    mat: np.ndarray

    def __post_init__(self):
        m = np.array(self.mat, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"density matrix must be 2x2, got shape {m.shape}")
        if np.max(np.abs(m - dagger(m))) > 1e-10:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > 1e-8:
            raise ValueError(f"density matrix trace is {np.trace(m).real:.12g}, expected 1")
        if np.min(np.linalg.eigvalsh(m)) < -STATE_TOL:
            raise ValueError("density matrix has a negative eigenvalue")
        m.flags.writeable = False
        object.__setattr__(self, "mat", m)

    @classmethod
    def from_ket(cls, ket) -> "DensityMatrix":
        ket = np.asarray(ket, dtype=complex)
        ket = ket / np.linalg.norm(ket)
        return cls(projector(ket))


def bloch_of(rho) -> BlochVector:
    """Bloch components ``r_n = Tr(rho sigma_n)``."""
    m = rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho)
    rx = float(np.real(m[0, 1] + m[1, 0]))
    ry = float(np.real(1j * (m[0, 1] - m[1, 0])))
    rz = float(np.real(m[0, 0] - m[1, 1]))
    return BlochVector(rx, ry, rz)


def state_of(b) -> DensityMatrix:
    """Inverse of :func:`bloch_of`: ``rho = (I + r . sigma) / 2``."""
    rx, ry, rz = (float(c) for c in b)
    if rx * rx + ry * ry + rz * rz > (1.0 + STATE_TOL) ** 2:
        raise ValueError(f"Bloch vector ({rx}, {ry}, {rz}) lies outside the unit ball")
    m = 0.5 * (IDENTITY + rx * SIGMA_X + ry * SIGMA_Y + rz * SIGMA_Z)
    return DensityMatrix(m)


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Half the trace norm of ``a - b`` (both Hermitian)."""
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(np.asarray(a) - np.asarray(b)))))


def unitary_fidelity(u: np.ndarray, v: np.ndarray) -> float:
    """``|Tr(u^dagger v)| / 2``; equals 1 iff the unitaries agree up to a global phase."""
    return float(abs(np.trace(dagger(u) @ v)) / 2.0)
