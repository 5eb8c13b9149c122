"""Symmetry structure of gate Hamiltonians.

Covers qubit exchange, global rotations generated by the total spin
S_n = sum_i (n . sigma)_i / 2, and the full Hermitian commutant
{X = X^dag : [h, X] = 0}, which contains every conserved quantity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import tolerances as tol
from .algebra import (
    SystemShape,
    as_matrix,
    commutator,
    embed,
    expm_neg_i,
    hermitian_eig,
    is_hermitian,
    tensor,
)
from .gates import pauli

__all__ = [
    "CommutantResult",
    "GeneratorSpanCheck",
    "RotationSearchResult",
    "SphereSearchResult",
    "check_product_generators",
    "commutant",
    "global_rotation",
    "hermitian_basis",
    "isomorphism_transfer_check",
    "joint_commutant",
    "rotation_generator_search",
    "rotation_residual",
    "single_qubit_rotation",
    "spectral_commutant_dimension",
    "sphere_search",
    "swap_matrix",
    "swap_symmetry_check",
    "total_spin",
]

_AXES = ("x", "y", "z")


def _unit_axis(axis, atol: float = 1e-10) -> np.ndarray:
    n = np.asarray(axis, dtype=float).reshape(3)
    if abs(np.linalg.norm(n) - 1.0) > atol:
        raise ValueError(f"rotation axis must be a unit vector, got norm {np.linalg.norm(n)}")
    return n


def _total_spin_components(num_qubits: int) -> np.ndarray:
    return np.stack(
        [sum(embed(0.5 * pauli(a), q, num_qubits) for q in range(1, num_qubits + 1)) for a in _AXES]
    )


def total_spin(axis, num_qubits: int) -> np.ndarray:
    """Total spin projection along a unit axis (hbar = 1)."""
    n = _unit_axis(axis)
    return np.tensordot(n, _total_spin_components(num_qubits), axes=1)


def single_qubit_rotation(axis, theta: float) -> np.ndarray:
    """cos(theta/2) I - i sin(theta/2) n . sigma, in closed form."""
    n = _unit_axis(axis)
    n_sigma = sum(c * pauli(a) for c, a in zip(n, _AXES))
    return np.cos(theta / 2) * pauli("i") - 1j * np.sin(theta / 2) * n_sigma


def global_rotation(axis, theta: float, num_qubits: int) -> np.ndarray:
    """exp(-i theta S_n) on the whole register, by direct exponentiation."""
    return expm_neg_i(total_spin(axis, num_qubits), theta)


def rotation_residual(h, axis) -> float:
    """||[S_n, h]||_F for one axis."""
    h = as_matrix(h)
    return float(np.linalg.norm(commutator(total_spin(axis, SystemShape.from_dim(h.shape[0]).num_qubits), h)))


@dataclass(frozen=True)
class RotationSearchResult:
    min_residual: float
    best_axis: np.ndarray
    singular_values: tuple[float, float, float]  # descending


def rotation_generator_search(h) -> RotationSearchResult:
    """Axis n minimizing ||[S_n, h]||_F over the unit sphere.

    n -> [S_n, h] is linear, so with M the real matrix whose columns are
    the stacked real/imaginary parts of [S_x, h], [S_y, h], [S_z, h], the
    minimum is the smallest singular value of M and the minimizer is its
    right singular vector, read off the 3x3 eigenproblem of M^T M.
    """
    h = as_matrix(h)
    if not is_hermitian(h):
        raise ValueError("rotation_generator_search() needs a Hermitian operator")
    shape = SystemShape.from_dim(h.shape[0])
    cols = []
    for s in _total_spin_components(shape.num_qubits):
        c = s @ h - h @ s
        cols.append(np.concatenate([c.real.ravel(), c.imag.ravel()]))
    m = np.array(cols).T
    _, vecs = hermitian_eig(m.T @ m)
    vecs = vecs.real
    # residual norms evaluated directly keep full precision near zero
    sv = [float(np.linalg.norm(m @ (v / np.linalg.norm(v)))) for v in vecs.T]
    axis = vecs[:, 0] / np.linalg.norm(vecs[:, 0])
    if axis[np.argmax(np.abs(axis))] < 0:
        axis = -axis
    return RotationSearchResult(
        min_residual=sv[0],
        best_axis=axis,
        singular_values=tuple(sorted(sv, reverse=True)),
    )


def _fibonacci_sphere(num_points: int) -> np.ndarray:
    i = np.arange(num_points) + 0.5
    polar = np.arccos(1 - 2 * i / num_points)
    azimuth = np.pi * (1 + np.sqrt(5)) * i
    return np.stack(
        [np.cos(azimuth) * np.sin(polar), np.sin(azimuth) * np.sin(polar), np.cos(polar)], axis=1
    )


@dataclass(frozen=True)
class SphereSearchResult:
    sampled_min: float
    sampled_axis: np.ndarray
    polished_min: float
    polished_axis: np.ndarray
    num_points: int


def sphere_search(h, num_points: int = 10_000, polish_tol: float = 1e-12) -> SphereSearchResult:
    """Brute-force counterpart of :func:`rotation_generator_search`.

    Builds S_n and evaluates the commutator norm on a Fibonacci lattice of
    axes, then polishes the best sample with a compass search on the
    sphere. No linear-algebra shortcut is used.
    """
    h = as_matrix(h)
    nq = SystemShape.from_dim(h.shape[0]).num_qubits
    spins = _total_spin_components(nq)

    def residuals(axes):
        s = np.einsum("ak,kij->aij", axes, spins)
        return np.linalg.norm(s @ h - h @ s, axis=(1, 2))

    axes = _fibonacci_sphere(num_points)
    r = residuals(axes)
    k = int(np.argmin(r))
    best, best_r = axes[k], float(r[k])
    sampled = (best_r, best.copy())

    step = 0.05
    while step > polish_tol:
        # tangent frame at the current axis
        t1 = np.cross(best, [1.0, 0.0, 0.0] if abs(best[0]) < 0.9 else [0.0, 1.0, 0.0])
        t1 /= np.linalg.norm(t1)
        t2 = np.cross(best, t1)
        trial = np.array([np.cos(step) * best + np.sin(step) * d for d in (t1, -t1, t2, -t2)])
        tr = residuals(trial)
        j = int(np.argmin(tr))
        if tr[j] < best_r:
            best, best_r = trial[j] / np.linalg.norm(trial[j]), float(tr[j])
        else:
            step /= 2
    return SphereSearchResult(sampled[0], sampled[1], best_r, best, num_points)


def hermitian_basis(dim: int) -> np.ndarray:
    """Frobenius-orthonormal basis of dim x dim Hermitian matrices, shape (dim**2, dim, dim)."""
    out = []
    for j in range(dim):
        e = np.zeros((dim, dim), dtype=np.complex128)
        e[j, j] = 1
        out.append(e)
    r = 1 / np.sqrt(2)
    for j in range(dim):
        for k in range(j + 1, dim):
            sym = np.zeros((dim, dim), dtype=np.complex128)
            sym[j, k] = sym[k, j] = r
            asym = np.zeros((dim, dim), dtype=np.complex128)
            asym[j, k], asym[k, j] = -1j * r, 1j * r
            out += [sym, asym]
    return np.array(out)


@dataclass(frozen=True)
class CommutantResult:
    dimension: int
    basis: list[np.ndarray] = field(repr=False)
    residuals: list[float] = field(repr=False)

    def gram(self) -> np.ndarray:
        b = np.array(self.basis).reshape(len(self.basis), -1)
        return b.conj() @ b.T


def joint_commutant(ops, tol_rel: float = tol.COMMUTANT_TOL) -> CommutantResult:
    """Hermitian matrices commuting with every operator in ``ops``.

    Each map X -> i[h, X] is written as a real matrix in the orthonormal
    Hermitian basis; the maps are stacked and their common nullspace is
    read from an SVD with singular values at or below
    ``tol_rel * max ||h||_F * dim`` counted as zero.
    """
    ops = [as_matrix(h) for h in ops]
    if not ops:
        raise ValueError("joint_commutant() needs at least one operator")
    dim = ops[0].shape[0]
    for h in ops:
        if h.shape != (dim, dim):
            raise ValueError("operators must share a dimension")
        if not is_hermitian(h):
            raise ValueError("commutant is defined here for Hermitian operators only")
    g = hermitian_basis(dim)
    flat = g.reshape(len(g), -1)
    blocks = []
    for h in ops:
        images = 1j * (np.einsum("ij,bjk->bik", h, g) - np.einsum("bij,jk->bik", g, h))
        blocks.append((flat.conj() @ images.reshape(len(g), -1).T).real)
    lmap = np.vstack(blocks)
    _, s, vt = np.linalg.svd(lmap)
    threshold = tol_rel * max(np.linalg.norm(h) for h in ops) * dim
    null = vt[s <= threshold]
    basis = [np.tensordot(c, g, axes=1) for c in null]
    residuals = [max(float(np.linalg.norm(commutator(h, b))) for h in ops) for b in basis]
    return CommutantResult(len(basis), basis, residuals)


def commutant(h, tol_rel: float = tol.COMMUTANT_TOL) -> CommutantResult:
    return joint_commutant([h], tol_rel)


def spectral_commutant_dimension(h, degeneracy: float = tol.DEGENERACY) -> int:
    """Sum of squared eigenvalue multiplicities of a Hermitian operator."""
    h = as_matrix(h)
    w, _ = hermitian_eig(h)
    gap = degeneracy * max(1.0, float(np.linalg.norm(h)))
    mults, run = [], 1
    for a, b in zip(w[:-1], w[1:]):
        if b - a <= gap:
            run += 1
        else:
            mults.append(run)
            run = 1
    mults.append(run)
    return sum(k * k for k in mults)


@dataclass(frozen=True)
class GeneratorSpanCheck:
    passed: bool
    residuals: dict[str, float]
    defects: dict[str, float]


def _product_generators(num_qubits: int, control_basis: str) -> dict[str, np.ndarray]:
    c = control_basis.lower()
    choices = [("i", c)] * (num_qubits - 1) + [("i", "x")]
    gens = {}
    for labels in product(*choices):
        name = "(x)".join(a.upper() for a in labels)
        gens[name] = tensor(*[pauli(a) for a in labels])
    return gens


def check_product_generators(h, control_basis: str = "z") -> GeneratorSpanCheck:
    """Check that the product generators commute with h and lie in its commutant.

    For a two-qubit h with z-basis control these are I(x)I, I(x)X, Z(x)I and
    Z(x)X: products of the control-basis Pauli on the control(s) and sigma_x
    on the target. Passes iff every commutator residual is at most 1e-10
    and every projection defect onto the commutant basis at most 1e-9.
    """
    h = as_matrix(h)
    nq = SystemShape.from_dim(h.shape[0]).num_qubits
    basis = commutant(h).basis
    residuals, defects = {}, {}
    for name, op in _product_generators(nq, control_basis).items():
        residuals[name] = float(np.linalg.norm(commutator(h, op)))
        proj = sum((np.vdot(b, op) * b for b in basis), np.zeros_like(op))
        defects[name] = float(np.linalg.norm(op - proj))
    passed = all(r <= tol.SPAN_RESIDUAL for r in residuals.values()) and all(
        d <= tol.SPAN_DEFECT for d in defects.values()
    )
    return GeneratorSpanCheck(passed, residuals, defects)


def swap_matrix() -> np.ndarray:
    return np.eye(4, dtype=np.complex128)[[0, 2, 1, 3]]


def swap_symmetry_check(u) -> float:
    """||SWAP u SWAP - u||_F; zero iff u is invariant under qubit exchange."""
    u = as_matrix(u)
    if u.shape != (4, 4):
        raise ValueError(f"swap check needs a 4x4 operator, got {u.shape}")
    sw = swap_matrix()
    return float(np.linalg.norm(sw @ u @ sw - u))


def isomorphism_transfer_check() -> bool:
    """True when only multiples of I commute with both sigma_z and sigma_x."""
    return joint_commutant([pauli("z"), pauli("x")]).dimension == 1
