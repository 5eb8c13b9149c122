"""Pauli matrices, basis projectors and the controlled-NOT family of gates.

Tensor order puts the control qubit(s) first and the target last.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce
from itertools import product

import numpy as np

from .algebra import tensor

__all__ = [
    "BasisLabel",
    "GateKind",
    "GateSpec",
    "apply_to_basis",
    "basis_vector",
    "gate_matrix",
    "operator_form_cnot",
    "pauli",
    "projector",
    "z_basis_labels",
]

_PAULI = {
    "i": np.eye(2, dtype=np.complex128),
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

_KETS = {
    ("z", 0): np.array([1, 0], dtype=np.complex128),
    ("z", 1): np.array([0, 1], dtype=np.complex128),
    ("x", 0): np.array([1, 1], dtype=np.complex128) / np.sqrt(2),
    ("x", 1): np.array([1, -1], dtype=np.complex128) / np.sqrt(2),
}


class GateKind(enum.Enum):
    CNOT = "cnot"
    TOFFOLI = "toffoli"
    CNOT_X_VARIANT = "cnot-x"

    @classmethod
    def parse(cls, name: str) -> "GateKind":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown gate {name!r}") from None


@dataclass(frozen=True)
class GateSpec:
    kind: GateKind

    @property
    def num_qubits(self) -> int:
        return 3 if self.kind is GateKind.TOFFOLI else 2

    @property
    def controls(self) -> tuple[int, ...]:
        return tuple(range(1, self.num_qubits))

    @property
    def target(self) -> int:
        return self.num_qubits

    @property
    def control_basis(self) -> str:
        """Basis in which the control qubit(s) select the flip."""
        return "x" if self.kind is GateKind.CNOT_X_VARIANT else "z"

    @property
    def dim(self) -> int:
        return 2**self.num_qubits


@dataclass(frozen=True)
class BasisLabel:
    bits: tuple[int, ...]
    bases: tuple[str, ...] = ()

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"bits must be 0 or 1, got {self.bits}")
        bases = tuple(self.bases) or ("z",) * len(bits)
        if len(bases) != len(bits) or any(b not in ("z", "x") for b in bases):
            raise ValueError(f"invalid basis tags {self.bases} for {len(bits)} bits")
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "bases", bases)


def pauli(axis: str) -> np.ndarray:
    """Pauli matrix (or identity for ``"i"``) in the z basis."""
    try:
        return _PAULI[axis.lower()].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}") from None


def projector(basis: str, outcome: int) -> np.ndarray:
    """Rank-1 projector on one qubit.

    ``projector("x", 0)`` projects onto |+> (sigma_x = +1) and
    ``projector("x", 1)`` onto |-> (sigma_x = -1), so their difference is
    sigma_x.
    """
    try:
        ket = _KETS[(basis, outcome)]
    except KeyError:
        raise ValueError(f"no projector for basis={basis!r}, outcome={outcome!r}") from None
    return np.outer(ket, ket.conj())


def basis_vector(label: BasisLabel) -> np.ndarray:
    return reduce(np.kron, [_KETS[(b, bit)] for b, bit in zip(label.bases, label.bits)])


def z_basis_labels(num_qubits: int) -> list[BasisLabel]:
    """All computational basis labels in tensor (row-index) order."""
    return [BasisLabel(bits) for bits in product((0, 1), repeat=num_qubits)]


def _controlled_not(num_controls: int, control_basis: str) -> np.ndarray:
    # sum over control patterns: all-ones pattern gets sigma_x on the target
    eye, flip = pauli("i"), pauli("x")
    dim = 2 ** (num_controls + 1)
    out = np.zeros((dim, dim), dtype=np.complex128)
    for pattern in product((0, 1), repeat=num_controls):
        proj = tensor(*[projector(control_basis, b) for b in pattern])
        out += tensor(proj, flip if all(pattern) else eye)
    return out


def gate_matrix(spec: GateSpec | GateKind) -> np.ndarray:
    if isinstance(spec, GateKind):
        spec = GateSpec(spec)
    if spec.kind is GateKind.CNOT:
        return np.array(
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
            dtype=np.complex128,
        )
    if spec.kind is GateKind.TOFFOLI:
        u = np.eye(8, dtype=np.complex128)
        u[6:, 6:] = [[0, 1], [1, 0]]
        return u
    return _controlled_not(1, "x")


def operator_form_cnot() -> np.ndarray:
    """|0><0| (x) I + |1><1| (x) sigma_x, control first."""
    return tensor(projector("z", 0), pauli("i")) + tensor(projector("z", 1), pauli("x"))


def apply_to_basis(spec: GateSpec | GateKind, label: BasisLabel) -> BasisLabel:
    """Logical action of the gate on a computational basis label."""
    if isinstance(spec, GateKind):
        spec = GateSpec(spec)
    if len(label.bits) != spec.num_qubits:
        raise ValueError(
            f"{spec.kind.value} acts on {spec.num_qubits} qubits, label has {len(label.bits)}"
        )
    expected = (spec.control_basis,) * (spec.num_qubits - 1) + ("z",)
    if label.bases != expected:
        raise ValueError(f"{spec.kind.value} basis action needs bases {expected}, got {label.bases}")
    *controls, target = label.bits
    if all(controls):
        target = 1 - target
    return BasisLabel((*controls, target), label.bases)
