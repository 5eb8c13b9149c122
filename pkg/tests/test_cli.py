import json
import subprocess
import sys

import numpy as np
import pytest

from gateforge.cli import DEFAULT_EPSILONS, STATUS_NONE, STATUS_SYMMETRIC, UsageError, main, parse_config, run
from gateforge.gates import GateKind
from gateforge.report import emit_structured, parse_structured
from gateforge.synthesis import SynthesisParams, build_cnot_hamiltonian
from gateforge.textio import dump_matrices, load_matrices


def structured(argv, capsys):
    code = main(argv + ["--format", "structured"])
    return code, json.loads(capsys.readouterr().out)


class TestParseConfig:
    def test_defaults(self):
        cfg = parse_config([])
        assert cfg.gate is GateKind.CNOT
        assert cfg.params == SynthesisParams(0, 0, 1.0, 1.0)
        assert cfg.jitter_epsilons == DEFAULT_EPSILONS
        assert cfg.analyses == ("verify",)

    def test_toffoli_mapping(self):
        cfg = parse_config(["--gate", "toffoli", "--n", "1", "--m", "-1"])
        assert cfg.gate is GateKind.TOFFOLI
        assert cfg.params == SynthesisParams(1, -1, 1.0, 1.0)

    def test_analyses_flag(self):
        cfg = parse_config(["--gate", "cnot-x", "--analyses", "symmetry"])
        assert cfg.gate is GateKind.CNOT_X_VARIANT
        assert cfg.analyses == ("symmetry",)

    def test_fixed_order(self):
        assert parse_config(["commutant", "synth", "jitter"]).analyses == ("synth", "jitter", "commutant")
        assert parse_config(["all"]).analyses == ("synth", "verify", "jitter", "symmetry", "commutant")

    @pytest.mark.parametrize(
        "argv, match",
        [
            (["--gate", "bell"], "unknown gate"),
            (["--tau", "0"], "tau"),
            (["--tau", "abc"], "not a number"),
            (["--a2", "0"], "a2"),
            (["--n", "1.5"], "invalid int"),
            (["--eps", "0.5"], "eps"),
            (["--bogus"], "unrecognized"),
            (["explode"], "unknown analysis"),
        ],
    )
    def test_rejections(self, argv, match):
        with pytest.raises(UsageError, match=match):
            parse_config(argv)

    def test_config_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"gate": "toffoli", "n": 2, "tau": 2.0, "analyses": ["jitter"]}))
        cfg = parse_config(["--config", str(path), "--n", "-1"])
        assert cfg.gate is GateKind.TOFFOLI
        assert cfg.params == SynthesisParams(-1, 0, 2.0, 1.0)
        assert cfg.analyses == ("jitter",)

    def test_config_file_unknown_key(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"colour": "red"}))
        with pytest.raises(UsageError, match="unknown config keys"):
            parse_config(["--config", str(path)])


class TestExitStatus:
    def test_verify_pass(self, capsys):
        code, rep = structured(["verify", "--gate", "cnot", "--n", "0", "--m", "0", "--tau", "1"], capsys)
        assert code == 0
        assert rep["results"]["verify"]["frobenius_distance"] <= 1e-10
        assert rep["verdicts"]["verify.gate_equality"] == "PASS"

    def test_symmetry(self, capsys):
        code, rep = structured(["symmetry", "--gate", "cnot"], capsys)
        assert code == 0
        assert rep["results"]["symmetry"]["min_residual"] > 0.5
        assert rep["results"]["symmetry"]["status"] == STATUS_NONE

    def test_x_variant_symmetry(self, capsys):
        code, rep = structured(["symmetry", "--gate", "cnot-x"], capsys)
        assert code == 0
        assert rep["results"]["symmetry"]["status"] == STATUS_SYMMETRIC

    def test_usage_error(self, capsys):
        assert main(["verify", "--gate", "cnot", "--tau", "0"]) == 2
        assert "error" in capsys.readouterr().err

    def test_failing_analysis(self, tmp_path, capsys):
        path = tmp_path / "zero.txt"
        dump_matrices(path, [np.zeros((4, 4))])
        code, rep = structured(["verify", "--hamiltonian", str(path)], capsys)
        assert code == 1
        assert rep["verdicts"]["verify.gate_equality"] == "FAIL"
        assert rep["results"]["verify"]["frobenius_distance"] == pytest.approx(2.0)

    def test_all_analyses_pass(self, capsys):
        for gate in ("cnot", "toffoli", "cnot-x"):
            code, rep = structured(["all", "--gate", gate, "--n", "1", "--m", "-2", "--tau", "0.5"], capsys)
            assert code == 0, rep["verdicts"]
            assert rep["passed"]

    def test_unwritable_output(self, tmp_path, capsys):
        assert main(["verify", "--out", str(tmp_path / "missing" / "r.json")]) == 2
        assert "cannot write" in capsys.readouterr().err

    def test_bad_hamiltonian_file(self, tmp_path, capsys):
        path = tmp_path / "h.txt"
        path.write_text("2\n1+0j 0+0j\n0+0j 1+0j\n")
        assert main(["verify", "--hamiltonian", str(path)]) == 2
        assert main(["verify", "--hamiltonian", str(tmp_path / "nope.txt")]) == 2


class TestReport:
    def test_round_trip(self):
        rep = run(parse_config(["all", "--gate", "cnot", "--n", "2"]))
        assert parse_structured(emit_structured(rep)) == rep

    def test_deterministic(self):
        argv = ["all", "--gate", "toffoli", "--m", "1"]
        assert emit_structured(run(parse_config(argv))) == emit_structured(run(parse_config(argv)))

    def test_tolerances_echoed(self):
        rep = run(parse_config([])).to_dict()
        assert rep["tolerances"]["gate_equality"] == 1e-10
        assert rep["config"]["gate"] == "cnot"
        assert rep["tool"] == "gate-forge"

    def test_text_output(self, capsys):
        assert main(["symmetry", "commutant"]) == 0
        out = capsys.readouterr().out
        assert STATUS_NONE in out
        assert "OVERALL: PASS" in out

    def test_out_file(self, tmp_path):
        path = tmp_path / "r.json"
        assert main(["jitter", "--format", "structured", "--out", str(path)]) == 0
        rep = parse_structured(path.read_text())
        rows = rep.results["jitter"]["rows"]
        assert len(rows) == 2 * len(DEFAULT_EPSILONS)
        assert {r["sign"] for r in rows} == {"+", "-"}

    def test_dump(self, tmp_path):
        path = tmp_path / "dump.txt"
        assert main(["commutant", "--dump", str(path)]) == 0
        mats = load_matrices(path)
        np.testing.assert_array_equal(mats[0], build_cnot_hamiltonian(SynthesisParams()))
        assert len(mats) == 1 + 10


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gateforge.cli", "verify", "--gate", "CNOT"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
