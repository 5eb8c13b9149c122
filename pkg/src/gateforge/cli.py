"""gate-forge command line.

    gate-forge <analysis>... [--gate cnot|toffoli|cnot-x] [--n INT] [--m INT]
               [--tau FLOAT] [--a2 FLOAT] [--eps FLOAT ...]
               [--format text|structured] [--out PATH]

Analyses run in the fixed order synth, verify, jitter, symmetry, commutant.
Exit status is 0 when every verdict passes, 1 when any fails and 2 on
usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import tolerances as tol
from .algebra import hermitian_eig, is_hermitian, phase_distance
from .gates import GateKind, GateSpec, gate_matrix
from .report import Report, emit_structured, render_text
from .symmetry import (
    check_product_generators,
    commutant,
    isomorphism_transfer_check,
    rotation_generator_search,
    spectral_commutant_dimension,
    sphere_search,
    swap_symmetry_check,
    total_spin,
)
from .synthesis import (
    SynthesisParams,
    ansatz_factors,
    block_exponential,
    build_hamiltonian,
    evolve,
    jitter_analysis,
    separability_defect,
)
from .textio import dump_matrices, load_matrices

ANALYSES = ("synth", "verify", "jitter", "symmetry", "commutant")
DEFAULT_EPSILONS = (1e-2, 5e-3, 2.5e-3)
STATUS_NONE = "NO GLOBAL ROTATION SYMMETRY"
STATUS_SYMMETRIC = "GLOBAL ROTATION SYMMETRY"
STATUS_UNCLEAR = "INCONCLUSIVE"


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    gate: GateKind = GateKind.CNOT
    params: SynthesisParams = field(default_factory=SynthesisParams)
    jitter_epsilons: tuple[float, ...] = DEFAULT_EPSILONS
    analyses: tuple[str, ...] = ("verify",)
    output_format: str = "text"
    output_path: str | None = None
    hamiltonian_path: str | None = None
    dump_path: str | None = None

    def __post_init__(self):
        if not self.analyses:
            raise UsageError("at least one analysis is required")
        unknown = set(self.analyses) - set(ANALYSES)
        if unknown:
            raise UsageError(f"unknown analysis: {', '.join(sorted(unknown))}")
        object.__setattr__(self, "analyses", tuple(a for a in ANALYSES if a in self.analyses))
        limit = tol.JITTER_MAX_FRACTION * self.params.tau
        for eps in self.jitter_epsilons:
            if not (0 < eps <= limit):
                raise UsageError(f"--eps values must lie in (0, {limit:g}], got {eps:g}")
        if self.output_format not in ("text", "structured"):
            raise UsageError(f"unknown format {self.output_format!r}")

    def echo(self) -> dict:
        p = self.params
        return {
            "gate": self.gate.value,
            "n": p.n,
            "m": p.m,
            "tau": p.tau,
            "a2": p.a2,
            "epsilons": list(self.jitter_epsilons),
            "analyses": list(self.analyses),
            "hamiltonian_path": self.hamiltonian_path,
        }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def _gate(text: str) -> GateKind:
    try:
        return GateKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gate-forge", description="Synthesize and analyze gate Hamiltonians.")
    p.add_argument("analysis", nargs="*", help="one or more of: " + ", ".join(ANALYSES) + ", all")
    p.add_argument("--analyses", nargs="+", default=[], metavar="NAME")
    p.add_argument("--config", metavar="PATH", help="JSON file with defaults for any flag")
    p.add_argument("--gate", type=_gate)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--tau", type=_finite_float)
    p.add_argument("--a2", type=_finite_float)
    p.add_argument("--eps", type=_finite_float, nargs="+")
    p.add_argument("--format", choices=("text", "structured"))
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--hamiltonian", metavar="PATH", help="load H from a matrix text file")
    p.add_argument("--dump", metavar="PATH", help="write H (and commutant basis) as text")
    p.add_argument("--version", action="version", version=f"gate-forge {__version__}")
    return p


_CONFIG_KEYS = {"gate", "n", "m", "tau", "a2", "eps", "analyses", "format", "out", "hamiltonian", "dump"}


def _load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def parse_config(argv: list[str]) -> RunConfig:
    args = build_parser().parse_args(argv)
    base = _load_config_file(args.config) if args.config else {}

    def pick(name, default):
        value = getattr(args, name)
        return base.get(name, default) if value is None else value

    names = list(args.analysis) + list(args.analyses)
    if not names:
        names = list(base.get("analyses", ["verify"]))
    if "all" in names:
        names = list(ANALYSES)
    try:
        gate = pick("gate", GateKind.CNOT)
        gate = gate if isinstance(gate, GateKind) else GateKind.parse(str(gate))
        params = SynthesisParams(
            n=pick("n", 0), m=pick("m", 0), tau=float(pick("tau", 1.0)), a2=float(pick("a2", 1.0))
        )
        return RunConfig(
            gate=gate,
            params=params,
            jitter_epsilons=tuple(float(e) for e in pick("eps", DEFAULT_EPSILONS)),
            analyses=tuple(names),
            output_format=pick("format", "text"),
            output_path=pick("out", None),
            hamiltonian_path=pick("hamiltonian", None),
            dump_path=pick("dump", None),
        )
    except UsageError:
        raise
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _load_hamiltonian(config: RunConfig) -> np.ndarray:
    try:
        (h,) = load_matrices(config.hamiltonian_path)
    except OSError as exc:
        raise UsageError(f"cannot read {config.hamiltonian_path}: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"{config.hamiltonian_path}: {exc}") from None
    if h.shape != (GateSpec(config.gate).dim,) * 2:
        raise UsageError(f"{config.hamiltonian_path}: shape {h.shape} does not fit {config.gate.value}")
    if not is_hermitian(h):
        raise UsageError(f"{config.hamiltonian_path}: matrix is not Hermitian")
    return h


def _synth(config, h, report):
    p = config.params
    w, _ = hermitian_eig(h)
    out = {"hamiltonian": [[[z.real, z.imag] for z in row] for row in h], "spectrum": w}
    report.add_verdict("synth.hermitian", is_hermitian(h))
    if config.hamiltonian_path is None:
        a, b = ansatz_factors(p, config.gate)
        out.update(
            a1=p.a1,
            a2=p.a2,
            b1=p.b1,
            b2=p.b2,
            energies=list(p.energies),
            ansatz_deviation=float(np.linalg.norm(np.kron(a, b) - h)),
            separability_defect=separability_defect(h, config.gate),
        )
        report.add_verdict("synth.ansatz", out["ansatz_deviation"] <= tol.ANSATZ_FACTORIZATION * max(1.0, np.linalg.norm(h)))
        report.add_verdict("synth.separable", out["separability_defect"] <= tol.SEPARABILITY)
    report.results["synth"] = out


def _verify(config, h, report):
    tau = config.params.tau
    u = evolve(h, tau, tau)
    target = gate_matrix(config.gate)
    out = {
        "frobenius_distance": float(np.linalg.norm(u - target)),
        "phase_distance": phase_distance(u, target),
    }
    report.add_verdict("verify.gate_equality", out["frobenius_distance"] <= tol.GATE_EQUALITY)
    if config.hamiltonian_path is None:
        out["block_dense_agreement"] = float(np.linalg.norm(block_exponential(config.params, config.gate) - u))
        report.add_verdict("verify.block_dense", out["block_dense_agreement"] <= tol.BLOCK_DENSE_AGREEMENT)
    report.results["verify"] = out


def _jitter(config, h, report):
    rows, by_eps = [], []
    for eps in config.jitter_epsilons:
        pair = jitter_analysis(config.params, eps, config.gate, h=h)
        by_eps.append(pair)
        for r in pair:
            rows.append(
                {
                    "epsilon": r.epsilon,
                    "sign": r.sign_symbol,
                    "frobenius_distance": r.frobenius_distance,
                    "operator_distance": r.operator_distance,
                    "phase_distance": r.phase_distance,
                    "fidelity": r.fidelity,
                    "first_order_bound": r.first_order_bound,
                }
            )
    report.add_verdict(
        "jitter.first_order_bound",
        all(r["operator_distance"] <= r["first_order_bound"] + 1e-12 for r in rows),
    )
    # distance ratio between successive epsilons, rescaled so that a halving
    # maps onto the [0.45, 0.55] window
    ratios = []
    for (prev, _), (cur, _) in zip(by_eps[:-1], by_eps[1:]):
        if prev.frobenius_distance > 0:
            ratios.append(0.5 * (cur.frobenius_distance / prev.frobenius_distance) * (prev.epsilon / cur.epsilon))
    if ratios:
        report.add_verdict(
            "jitter.linear_scaling",
            all(tol.JITTER_RATIO_LOW <= r <= tol.JITTER_RATIO_HIGH for r in ratios),
        )
    report.results["jitter"] = {"rows": rows, "halving_equivalent_ratios": ratios}


def _rotation_status(min_residual: float) -> str:
    if min_residual > tol.NO_SYMMETRY_RESIDUAL:
        return STATUS_NONE
    if min_residual <= tol.SYMMETRY_RESIDUAL:
        return STATUS_SYMMETRIC
    return STATUS_UNCLEAR


def _symmetry(config, h, report):
    search = rotation_generator_search(h)
    sphere = sphere_search(h)
    spec = GateSpec(config.gate)
    u = gate_matrix(config.gate)
    status = _rotation_status(search.min_residual)
    out = {
        "status": status,
        "min_residual": search.min_residual,
        "best_axis": search.best_axis,
        "singular_values": list(search.singular_values),
        "sphere_sampled_min": sphere.sampled_min,
        "sphere_polished_min": sphere.polished_min,
        "sphere_points": sphere.num_points,
        "gate_commutator_best_axis": float(
            np.linalg.norm(total_spin(search.best_axis, spec.num_qubits) @ u - u @ total_spin(search.best_axis, spec.num_qubits))
        ),
        "pauli_pair_commutant_trivial": isomorphism_transfer_check(),
    }
    if spec.num_qubits == 2:
        out["swap_residual"] = swap_symmetry_check(u)
    expected = STATUS_SYMMETRIC if config.gate is GateKind.CNOT_X_VARIANT else STATUS_NONE
    report.add_verdict("symmetry.rotation_status", status == expected)
    gap = sphere.polished_min - search.min_residual
    report.add_verdict("symmetry.sphere_cross_check", search.min_residual <= sphere.sampled_min and -1e-12 <= gap <= tol.SPHERE_GAP)
    if status == STATUS_SYMMETRIC:
        report.add_verdict("symmetry.gate_commutes", out["gate_commutator_best_axis"] <= tol.GATE_COMMUTATOR)
    report.add_verdict("symmetry.pauli_pair", out["pauli_pair_commutant_trivial"])
    report.results["symmetry"] = out
    return search


def _commutant(config, h, report):
    res = commutant(h)
    oracle = spectral_commutant_dimension(h)
    gram_defect = float(np.linalg.norm(res.gram() - np.eye(res.dimension)))
    span = check_product_generators(h, GateSpec(config.gate).control_basis)
    out = {
        "dimension": res.dimension,
        "spectral_dimension": oracle,
        "max_residual": max(res.residuals),
        "gram_defect": gram_defect,
        "product_generators": {"passed": span.passed, "residuals": span.residuals, "defects": span.defects},
    }
    report.add_verdict("commutant.dimension", res.dimension == oracle)
    report.add_verdict(
        "commutant.orthonormal_basis",
        gram_defect <= 1e-10 and out["max_residual"] <= tol.COMMUTANT_TOL * max(1.0, np.linalg.norm(h)),
    )
    report.add_verdict("commutant.product_generators", span.passed)
    report.results["commutant"] = out
    return res


def run(config: RunConfig) -> Report:
    """Run the configured analyses and return the aggregated report."""
    report = Report(version=__version__, config=config.echo(), tolerances=tol.as_dict())
    if config.hamiltonian_path is not None:
        h = _load_hamiltonian(config)
    else:
        h = build_hamiltonian(config.gate, config.params)
    dumps = [h]
    steps = {"synth": _synth, "verify": _verify, "jitter": _jitter, "symmetry": _symmetry, "commutant": _commutant}
    for name in config.analyses:
        result = steps[name](config, h, report)
        if name == "commutant":
            dumps += result.basis
    if config.dump_path is not None:
        try:
            dump_matrices(config.dump_path, dumps)
        except OSError as exc:
            raise UsageError(f"cannot write {config.dump_path}: {exc}") from None
    return report


def render(report: Report, fmt: str) -> str:
    return emit_structured(report) if fmt == "structured" else render_text(report)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_config(argv)
        report = run(config)
        text = render(report, config.output_format)
        if config.output_path is None:
            sys.stdout.write(text)
        else:
            try:
                with open(config.output_path, "w", encoding="utf-8") as fh:
                    fh.write(text)
            except OSError as exc:
                raise UsageError(f"cannot write {config.output_path}: {exc}") from None
    except UsageError as exc:
        print(f"gate-forge: error: {exc}", file=sys.stderr)
        return 2
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
