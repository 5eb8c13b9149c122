import numpy as np
import pytest

from conftest import GRID
from gateforge.algebra import hermitian_eig, tensor
from gateforge.gates import GateKind, gate_matrix, projector
from gateforge.synthesis import (
    SynthesisParams,
    ansatz_factors,
    block_exponential,
    build_cnot_hamiltonian,
    build_cnot_x_hamiltonian,
    build_hamiltonian,
    build_toffoli_hamiltonian,
    evolve,
    jitter_analysis,
    separability_defect,
    timing_correction,
    verify_gate,
)

DEFAULT = SynthesisParams()
MINUS = projector("x", 1)
P1 = projector("z", 1)


def test_params_validation():
    assert (DEFAULT.n, DEFAULT.m, DEFAULT.tau, DEFAULT.a2) == (0, 0, 1.0, 1.0)
    for bad in [dict(tau=0), dict(tau=-1), dict(a2=0), dict(n=1.5), dict(m=True), dict(tau=float("inf"))]:
        with pytest.raises(ValueError):
            SynthesisParams(**bad)


def test_coefficients():
    p = SynthesisParams(n=1, m=2, tau=0.5, a2=2.0)
    assert p.a1 == 0.0
    assert p.b1 == pytest.approx(2 * np.pi / (0.5 * 2.0))
    assert p.b2 == pytest.approx(5 * np.pi / (0.5 * 2.0))
    # the pulse conditions exp(-i tau a2 b) = 1 and -1
    assert np.exp(-1j * p.tau * p.a2 * p.b1) == pytest.approx(1.0, abs=1e-14)
    assert np.exp(-1j * p.tau * p.a2 * p.b2) == pytest.approx(-1.0, abs=1e-14)


class TestCnotHamiltonian:
    def test_minimal_member(self):
        h = build_cnot_hamiltonian(DEFAULT)
        np.testing.assert_allclose(h, np.pi * tensor(P1, MINUS), atol=1e-15)
        assert np.linalg.matrix_rank(h) == 1

    def test_coupling_cancels(self):
        a = build_cnot_hamiltonian(SynthesisParams(0, 0, 1.0, 1.0))
        b = build_cnot_hamiltonian(SynthesisParams(0, 0, 1.0, 7.3))
        assert np.linalg.norm(a - b) <= 1e-14

    def test_spectrum_tau_two(self):
        w, _ = hermitian_eig(build_cnot_hamiltonian(SynthesisParams(1, 0, 2.0, 1.0)))
        np.testing.assert_allclose(w, [0, 0, np.pi / 2, np.pi], atol=1e-14)

    @pytest.mark.parametrize("p", GRID[::7])
    def test_a2_independence(self, p):
        base = build_cnot_hamiltonian(SynthesisParams(p.n, p.m, p.tau, 1.0))
        other = build_cnot_hamiltonian(p)
        assert np.linalg.norm(other - base) <= 1e-14
        np.testing.assert_array_equal(hermitian_eig(other).eigenvalues, hermitian_eig(base).eigenvalues)

    @pytest.mark.parametrize("kind", list(GateKind))
    def test_explicit_factorization(self, kind):
        # A (x) B with a2 and the b's kept separate reproduces V up to roundoff
        for p in GRID:
            a, b = ansatz_factors(p, kind)
            h = build_hamiltonian(kind, p)
            assert np.linalg.norm(tensor(a, b) - h) <= 1e-14 * max(1.0, np.linalg.norm(h))

    @pytest.mark.parametrize("kind", list(GateKind))
    def test_separable_in_product_basis(self, kind):
        for p in GRID:
            assert separability_defect(build_hamiltonian(kind, p), kind) <= 1e-14


class TestToffoliHamiltonian:
    def test_rank_one_support(self):
        h = build_toffoli_hamiltonian(DEFAULT)
        w, v = hermitian_eig(h)
        np.testing.assert_allclose(w, [0] * 7 + [np.pi], atol=1e-14)
        support = np.kron(np.kron([0, 1], [0, 1]), [1, -1]) / np.sqrt(2)
        assert abs(np.vdot(support, v[:, -1])) == pytest.approx(1.0, abs=1e-12)

    def test_exponential_is_toffoli(self):
        u = evolve(build_toffoli_hamiltonian(DEFAULT), 1.0, 1.0)
        assert np.linalg.norm(u - gate_matrix(GateKind.TOFFOLI)) <= 1e-10

    def test_zero_off_control_subspace(self):
        h = build_toffoli_hamiltonian(SynthesisParams(2, -1, 0.5, 3.0))
        np.testing.assert_array_equal(h[:6, :], 0)
        np.testing.assert_array_equal(h[:, :6], 0)


def test_cnot_x_hamiltonian():
    h = build_cnot_x_hamiltonian(DEFAULT)
    np.testing.assert_allclose(h, np.pi * tensor(projector("x", 1), MINUS), atol=1e-15)
    assert verify_gate(h, 1.0, GateKind.CNOT_X_VARIANT) <= 1e-10


class TestEvolve:
    def test_zero_time(self):
        np.testing.assert_allclose(evolve(build_cnot_hamiltonian(DEFAULT), 0.0, 1.0), np.eye(4), atol=1e-15)

    def test_full_pulse(self):
        assert np.linalg.norm(evolve(build_cnot_hamiltonian(DEFAULT), 1.0, 1.0) - gate_matrix(GateKind.CNOT)) <= 1e-12

    def test_frozen_after_pulse(self):
        h = build_cnot_hamiltonian(DEFAULT)
        np.testing.assert_array_equal(evolve(h, 5.0, 1.0), evolve(h, 1.0, 1.0))

    def test_errors(self):
        h = build_cnot_hamiltonian(DEFAULT)
        with pytest.raises(ValueError):
            evolve(h, -0.1, 1.0)
        with pytest.raises(ValueError):
            evolve(h, 0.5, 0.0)
        with pytest.raises(ValueError):
            evolve(np.array([[0, 1], [0, 0]]), 0.5, 1.0)


class TestBlockExponential:
    @pytest.mark.parametrize("n", [0, 1])
    def test_exact_cnot(self, n):
        u = block_exponential(SynthesisParams(n, 0, 1.0, 1.0))
        np.testing.assert_allclose(u, gate_matrix(GateKind.CNOT), atol=1e-15)

    @pytest.mark.parametrize("kind", list(GateKind))
    def test_agrees_with_dense(self, kind):
        for p in GRID:
            dense = evolve(build_hamiltonian(kind, p), p.tau, p.tau)
            assert np.linalg.norm(block_exponential(p, kind) - dense) <= 1e-12


class TestVerifyGate:
    def test_default(self):
        assert verify_gate(build_cnot_hamiltonian(DEFAULT), 1.0, GateKind.CNOT) <= 1e-12

    def test_other_integers(self):
        p = SynthesisParams(3, -2, 0.5, 2.0)
        assert verify_gate(build_cnot_hamiltonian(p), 0.5, GateKind.CNOT) <= 1e-10

    def test_zero_hamiltonian(self):
        # I - CNOT is [[1, -1], [-1, 1]] on the flip block
        assert verify_gate(np.zeros((4, 4)), 1.0, GateKind.CNOT) == pytest.approx(2.0, abs=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="does not match"):
            verify_gate(np.zeros((4, 4)), 1.0, GateKind.TOFFOLI)

    @pytest.mark.parametrize("kind", list(GateKind))
    def test_grid(self, kind):
        for p in GRID:
            assert verify_gate(build_hamiltonian(kind, p), p.tau, kind) <= 1e-10


class TestJitter:
    def test_exact_pulse(self):
        for r in jitter_analysis(DEFAULT, 0.0):
            assert r.frobenius_distance <= 1e-12
            assert r.phase_distance <= 1e-12
            assert r.fidelity == pytest.approx(1.0, abs=1e-12)

    def test_closed_form(self):
        # rank-one V: the only changed eigenphase is e^{-i pi eps}, so the
        # distance is |e^{-i pi eps} - 1| = 2 sin(pi eps / 2)
        plus, minus = jitter_analysis(DEFAULT, 0.01)
        for r in (plus, minus):
            assert r.frobenius_distance == pytest.approx(2 * np.sin(np.pi * 0.005), abs=1e-13)
            assert r.frobenius_distance <= np.pi * 0.01 + 1e-12
            assert r.fidelity == pytest.approx(abs(3 + np.exp(-1j * np.pi * 0.01)) / 4, abs=1e-13)
        assert (plus.sign, minus.sign) == (1, -1)

    def test_halving(self):
        d = [jitter_analysis(DEFAULT, e)[0].frobenius_distance for e in (1e-2, 5e-3, 2.5e-3)]
        for a, b in zip(d, d[1:]):
            assert 0.45 <= b / a <= 0.55

    def test_operator_norm_bound_on_grid(self):
        for p in GRID[::5]:
            for r in jitter_analysis(p, p.tau / 20):
                assert r.operator_distance <= r.first_order_bound + 1e-12

    def test_correction_factor(self):
        p = SynthesisParams(1, 1, 2.0, 1.0)
        h = build_cnot_hamiltonian(p)
        for sign in (1, -1):
            u = evolve(h, p.tau, p.tau) @ timing_correction(h, 0.05, sign)
            np.testing.assert_allclose(u, evolve(h, p.tau + sign * 0.05, 10.0), atol=1e-12)

    def test_range(self):
        with pytest.raises(ValueError):
            jitter_analysis(DEFAULT, 0.2)
        with pytest.raises(ValueError):
            jitter_analysis(DEFAULT, -0.01)
