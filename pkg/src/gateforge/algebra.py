"""Dense complex operator kernel.

Operators are plain ``numpy`` arrays of dtype ``complex128`` and shape
``(d, d)``. Units are chosen with hbar = 1, so Planck's constant is 2*pi.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "SpectralDecomposition",
    "SystemShape",
    "as_matrix",
    "commutator",
    "embed",
    "expm_neg_i",
    "frobenius_distance",
    "hermitian_eig",
    "is_hermitian",
    "is_unitary",
    "phase_distance",
    "tensor",
]

JACOBI_REL_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class SystemShape:
    """Register of qubits; qubit 1 is the leftmost tensor factor.

    Single-qubit operators use the z basis with |0> the +1 eigenstate of
    sigma_z (spin up, +hbar/2) and |1> the -1 eigenstate.
    """

    num_qubits: int

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError(f"num_qubits must be positive, got {self.num_qubits}")

    @property
    def dim(self) -> int:
        return 2**self.num_qubits

    @classmethod
    def from_dim(cls, dim: int) -> "SystemShape":
        n = int(dim).bit_length() - 1
        if dim < 2 or 2**n != dim:
            raise ValueError(f"dimension {dim} is not a power of 2")
        return cls(n)


class SpectralDecomposition(NamedTuple):
    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # unitary, columns are eigenvectors

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(a) -> np.ndarray:
    """Coerce to a square complex128 array, raising ValueError otherwise."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    return m


def is_hermitian(a, tol: float = 1e-10) -> bool:
    m = as_matrix(a)
    return np.linalg.norm(m - m.conj().T) <= tol * max(1.0, np.linalg.norm(m))


def is_unitary(a, tol: float = 1e-10) -> bool:
    m = as_matrix(a)
    return np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0])) <= tol


def _require_hermitian(h, tol: float = 1e-10) -> np.ndarray:
    m = as_matrix(h)
    if not is_hermitian(m, tol):
        raise ValueError("operator is not Hermitian")
    return m


def _require_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")


def tensor(*factors) -> np.ndarray:
    """Kronecker product, first factor leftmost."""
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = np.kron(out, as_matrix(f))
    return out


def embed(op, qubit: int, num_qubits: int) -> np.ndarray:
    """Place a single-qubit operator on ``qubit`` (1-based) of a register."""
    op = as_matrix(op)
    if op.shape != (2, 2):
        raise ValueError("embed() takes a 2x2 operator")
    if not 1 <= qubit <= num_qubits:
        raise ValueError(f"qubit {qubit} outside 1..{num_qubits}")
    eye = np.eye(2, dtype=np.complex128)
    return tensor(*[op if k == qubit else eye for k in range(1, num_qubits + 1)])


def commutator(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _require_same_dim(a, b)
    return a @ b - b @ a


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    mag = abs(apq)
    phase = apq / mag
    theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
    if theta < 0:
        t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # phase fix diag(1, conj(phase)) makes the pivot real, then a real rotation
    j = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ j
    a[idx, :] = j.conj().T @ a[idx, :]
    v[:, idx] = v[:, idx] @ j
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def hermitian_eig(h) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.

    Sweeps stop once the off-diagonal Frobenius mass drops to
    ``1e-14 * ||h||_F``. Eigenvalues are returned in ascending order.
    Degenerate eigenspaces come back with an arbitrary orthonormal basis.
    """
    m = _require_hermitian(h)
    a = 0.5 * (m + m.conj().T)
    d = a.shape[0]
    v = np.eye(d, dtype=np.complex128)
    norm = np.linalg.norm(a)
    target = JACOBI_REL_TOL * norm
    # pivots this small cannot matter against the target, and rotating on
    # them risks overflow in the rotation angle
    negligible = 1e-4 * JACOBI_REL_TOL * norm
    off_mask = ~np.eye(d, dtype=bool)

    for _ in range(JACOBI_MAX_SWEEPS):
        if np.sqrt(np.sum(np.abs(a[off_mask]) ** 2)) <= target:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                if abs(a[p, q]) > negligible:
                    _jacobi_rotate(a, v, p, q)
                else:
                    a[p, q] = a[q, p] = 0.0
    else:
        if np.sqrt(np.sum(np.abs(a[off_mask]) ** 2)) > target:
            warnings.warn("Jacobi eigensolver hit the sweep limit", RuntimeWarning)

    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(w[order].copy(), v[:, order].copy())


def expm_neg_i(h, t: float) -> np.ndarray:
    """exp(-i t h) for Hermitian ``h`` via its spectral decomposition."""
    w, v = hermitian_eig(h)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def frobenius_distance(u, v) -> float:
    u, v = as_matrix(u), as_matrix(v)
    _require_same_dim(u, v)
    return float(np.linalg.norm(u - v))


def phase_distance(u, v, tol: float = 1e-8) -> float:
    """min over phi of ||u - e^{i phi} v||_F for unitaries u, v.

    Equals sqrt(2d - 2|Tr(u^dag v)|); evaluated through the optimal phase
    rather than the closed form so small distances keep full precision.
    """
    u, v = as_matrix(u), as_matrix(v)
    _require_same_dim(u, v)
    if not (is_unitary(u, tol) and is_unitary(v, tol)):
        raise ValueError("phase_distance() requires unitary inputs")
    overlap = np.trace(u.conj().T @ v)
    phase = np.conj(overlap) / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(u - phase * v))
