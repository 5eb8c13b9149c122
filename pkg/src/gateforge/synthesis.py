"""Time-independent interaction Hamiltonians whose pulse realizes a gate.

The interaction is switched on for a window [0, tau] with constant V and
off afterwards, so the gate is exp(-i tau V). V is taken separable,
V = A (x) B with A diagonal in the control basis and B diagonal in the
sigma_x eigenbasis of the target. With A = diag(0, a2) the conditions

    exp(-i tau a2 b1) = 1,   exp(-i tau a2 b2) = -1

fix b1 = 2 pi n / (tau a2) and b2 = (2m + 1) pi / (tau a2) for integers
n, m, and a2 cancels out of V itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Integral

import numpy as np

from . import tolerances as tol
from .algebra import (
    as_matrix,
    expm_neg_i,
    frobenius_distance,
    hermitian_eig,
    phase_distance,
    tensor,
)
from .gates import GateKind, GateSpec, gate_matrix, pauli, projector

__all__ = [
    "JitterReport",
    "SynthesisParams",
    "ansatz_factors",
    "block_exponential",
    "build_cnot_hamiltonian",
    "build_cnot_x_hamiltonian",
    "build_hamiltonian",
    "build_toffoli_hamiltonian",
    "evolve",
    "jitter_analysis",
    "product_eigenbasis",
    "separability_defect",
    "timing_correction",
    "verify_gate",
]


@dataclass(frozen=True)
class SynthesisParams:
    n: int = 0
    m: int = 0
    tau: float = 1.0
    a2: float = 1.0

    def __post_init__(self):
        for name in ("n", "m"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, Integral):
                raise ValueError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if not (math.isfinite(self.tau) and self.tau > 0):
            raise ValueError(f"tau must be positive and finite, got {self.tau}")
        if not math.isfinite(self.a2) or self.a2 == 0:
            raise ValueError(f"a2 must be finite and nonzero, got {self.a2}")
        object.__setattr__(self, "tau", float(self.tau))
        object.__setattr__(self, "a2", float(self.a2))

    a1 = 0.0

    @property
    def b1(self) -> float:
        return 2 * math.pi * self.n / (self.tau * self.a2)

    @property
    def b2(self) -> float:
        return (2 * self.m + 1) * math.pi / (self.tau * self.a2)

    @property
    def energies(self) -> tuple[float, float]:
        """Products a2*b1, a2*b2 in reduced form (independent of a2)."""
        return 2 * math.pi * self.n / self.tau, (2 * self.m + 1) * math.pi / self.tau


def _target_operator(p: SynthesisParams) -> np.ndarray:
    e_plus, e_minus = p.energies
    return e_plus * projector("x", 0) + e_minus * projector("x", 1)


def ansatz_factors(
    p: SynthesisParams, kind: GateKind = GateKind.CNOT
) -> tuple[np.ndarray, np.ndarray]:
    """Separable factors (A, B), V = A (x) B, with a2 and the b's kept explicit.

    A acts on the control register: a2 on the all-ones control state,
    a1 = 0 elsewhere. B is diagonal in the target's sigma_x eigenbasis.
    """
    spec = GateSpec(kind)
    active = tensor(*[projector(spec.control_basis, 1)] * (spec.num_qubits - 1))
    a = p.a1 * (np.eye(active.shape[0]) - active) + p.a2 * active
    b = p.b1 * projector("x", 0) + p.b2 * projector("x", 1)
    return a, b


def build_cnot_hamiltonian(p: SynthesisParams) -> np.ndarray:
    return tensor(projector("z", 1), _target_operator(p))


def build_toffoli_hamiltonian(p: SynthesisParams) -> np.ndarray:
    return tensor(projector("z", 1), projector("z", 1), _target_operator(p))


def build_cnot_x_hamiltonian(p: SynthesisParams) -> np.ndarray:
    """Same target coupling, but conditioned on the control being |->."""
    return tensor(projector("x", 1), _target_operator(p))


def build_hamiltonian(kind: GateKind, p: SynthesisParams) -> np.ndarray:
    builders = {
        GateKind.CNOT: build_cnot_hamiltonian,
        GateKind.TOFFOLI: build_toffoli_hamiltonian,
        GateKind.CNOT_X_VARIANT: build_cnot_x_hamiltonian,
    }
    return builders[kind](p)


def evolve(h, t: float, tau: float) -> np.ndarray:
    """Propagator at time t for a rectangular pulse of length tau.

    The free Hamiltonian is neglected, so nothing happens after the pulse.
    """
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    return expm_neg_i(h, min(t, tau))


def block_exponential(p: SynthesisParams, kind: GateKind = GateKind.CNOT) -> np.ndarray:
    """exp(-i tau V) assembled block by block, without any eigensolve.

    Every control pattern except all-ones carries the coefficient a1 = 0
    and contributes the identity on the target. The all-ones block is a
    pair of scalar phases on the sigma_x eigenprojectors.
    """
    spec = GateSpec(kind)
    n_ctrl = spec.num_qubits - 1
    active = tensor(*[projector(spec.control_basis, 1)] * n_ctrl)
    idle = np.eye(2**n_ctrl) - active
    phase_plus = np.exp(-1j * p.tau * p.a2 * p.b1)
    phase_minus = np.exp(-1j * p.tau * p.a2 * p.b2)
    flip = phase_plus * projector("x", 0) + phase_minus * projector("x", 1)
    idle_block = np.exp(-1j * p.tau * p.a1 * p.b1) * projector("x", 0) + np.exp(
        -1j * p.tau * p.a1 * p.b2
    ) * projector("x", 1)
    return tensor(idle, idle_block) + tensor(active, flip)


def verify_gate(h, tau: float, target: GateSpec | GateKind) -> float:
    """Frobenius distance between the pulse propagator and the target gate."""
    h = as_matrix(h)
    u_target = gate_matrix(target)
    if h.shape != u_target.shape:
        raise ValueError(f"Hamiltonian shape {h.shape} does not match gate {u_target.shape}")
    return frobenius_distance(evolve(h, tau, tau), u_target)


def product_eigenbasis(spec: GateSpec | GateKind) -> np.ndarray:
    """Unitary whose columns are the uncorrelated control-basis (x) x-basis states."""
    if isinstance(spec, GateKind):
        spec = GateSpec(spec)
    hadamard = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
    ctrl = pauli("i") if spec.control_basis == "z" else hadamard
    return tensor(*[ctrl] * (spec.num_qubits - 1), hadamard)


def separability_defect(h, spec: GateSpec | GateKind) -> float:
    """Off-diagonal Frobenius mass of h in the product eigenbasis."""
    w = product_eigenbasis(spec)
    d = w.conj().T @ as_matrix(h) @ w
    return float(np.linalg.norm(d - np.diag(np.diag(d))))


def timing_correction(h, epsilon: float, sign: int) -> np.ndarray:
    """Extra factor u with U(tau + sign*epsilon) = U(tau) @ u."""
    return expm_neg_i(h, sign * epsilon)


@dataclass(frozen=True)
class JitterReport:
    epsilon: float
    sign: int
    frobenius_distance: float
    operator_distance: float
    phase_distance: float
    fidelity: float
    first_order_bound: float  # epsilon * ||V||_op, bounds operator_distance

    @property
    def sign_symbol(self) -> str:
        return "+" if self.sign > 0 else "-"


def jitter_analysis(
    p: SynthesisParams, epsilon: float, kind: GateKind = GateKind.CNOT, h=None
) -> tuple[JitterReport, JitterReport]:
    """Compare pulses of length tau + epsilon and tau - epsilon to the ideal gate.

    Returns the (+, -) pair. ``h`` overrides the synthesized Hamiltonian.
    """
    if not 0 <= epsilon <= tol.JITTER_MAX_FRACTION * p.tau:
        raise ValueError(
            f"epsilon must lie in [0, {tol.JITTER_MAX_FRACTION} * tau], got {epsilon}"
        )
    h = build_hamiltonian(kind, p) if h is None else as_matrix(h)
    w, _ = hermitian_eig(h)
    v_norm = float(np.max(np.abs(w)))
    u_target = gate_matrix(kind)
    dim = u_target.shape[0]
    reports = []
    for sign in (+1, -1):
        u = expm_neg_i(h, p.tau + sign * epsilon)
        fid = abs(np.trace(u_target.conj().T @ u)) / dim
        reports.append(
            JitterReport(
                epsilon=float(epsilon),
                sign=sign,
                frobenius_distance=frobenius_distance(u, u_target),
                operator_distance=float(np.linalg.norm(u - u_target, ord=2)),
                phase_distance=phase_distance(u, u_target),
                fidelity=float(min(fid, 1.0)),
                first_order_bound=epsilon * v_norm,
            )
        )
    return reports[0], reports[1]
