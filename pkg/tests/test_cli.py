"""End-to-end command-line tests with exit-code contracts."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from symcap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEh:
    def test_quoted_example(self, capsys):
        code, out, _ = run(capsys, "eh", "1,3/2,2", "--count", "3")
        assert code == 0
        assert out.strip() == "1, 3/2, 2"

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "eh", "1,2", "--count", "4")
        assert code == 0
        doc = json.loads(out)
        assert doc["capacities"] == ["1", "2", "2", "3"]

    def test_irrational_axes(self, capsys):
        code, out, _ = run(capsys, "eh", "1,root(2,2)", "--count", "3")
        assert code == 0
        assert out.strip() == "1, root(2, 2), 2"


class TestPack:
    def test_infeasible_with_witness(self, capsys):
        code, out, _ = run(capsys, "pack", "3/2", "1,1")
        assert code == 1
        assert out.strip() == "Infeasible: witness (1;1,1)"

    def test_feasible(self, capsys):
        code, out, _ = run(capsys, "pack", "2", "1,1,1,1")
        assert code == 0
        assert out.strip() == "Feasible"

    def test_volume_witness(self, capsys):
        code, out, _ = run(capsys, "pack", "1", "1,1")
        assert code == 1
        assert "volume" in out


class TestPackingNumber:
    @pytest.mark.parametrize(
        "k,value", [(1, "1"), (2, "1/2"), (8, "288/289"), (9, "1")]
    )
    def test_values(self, capsys, k, value):
        code, out, _ = run(capsys, "packing-number", str(k))
        assert code == 0
        assert out.strip() == value


class TestWeights:
    def test_expansion(self, capsys):
        code, out, _ = run(capsys, "weights", "2", "5")
        assert code == 0
        assert out.strip() == "2^x2, 1^x2"


class TestFval:
    def test_known_point(self, capsys):
        code, out, _ = run(capsys, "fval", "3/2", "3")
        assert code == 0
        assert "f = 2 [L2.12]" in out

    def test_open_point_bounds(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "fval", "3", "20", "--max-count", "100")
        assert code == 0
        doc = json.loads(out)
        assert doc["lower"] == "root(60, 3)"
        assert doc["upper"] == "root(20, 2)"
        assert "value" not in doc


class TestCertifyAndVerify:
    def test_round_trip_through_files(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        code, out, _ = run(capsys, "certify", "olga3", "2", "3", "--out", str(path))
        assert code == 0
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 0
        assert out.strip() == "Valid"

    def test_every_builder_output_verifies(self, capsys, tmp_path):
        cases = [
            ("olga2", ["3", "1"]),
            ("olga3", ["3", "3"]),
            ("olga4", ["2000000000000", "3"]),
            ("fullfill2", ["9", "pow(10, 30)"]),
            ("lambdatrick", ["5", "6", "3", "1"]),
        ]
        for kind, params in cases:
            path = tmp_path / f"{kind}.json"
            code, _, _ = run(capsys, "certify", kind, *params, "--out", str(path))
            assert code == 0, kind
            code, out, _ = run(capsys, "verify", str(path))
            assert code == 0, kind

    def test_tampered_certificate_rejected(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        run(capsys, "certify", "olga3", "2", "3", "--out", str(path))
        doc = json.loads(path.read_text())

        def tamper(d):
            for s in d.get("steps", []):
                if s["rule"] == "AxiomMSsqrt":
                    s["params"]["b"] = "5"
                    return True
                if s["rule"] == "Suspend" and tamper(s["params"]["inner"]):
                    return True
            return False

        assert tamper(doc)
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 1
        assert "Invalid at step" in out
        assert "need b = 4 or b >= 289/36" in out

    def test_hypothesis_violation_exit_code(self, capsys):
        code, out, _ = run(capsys, "certify", "fullfill2", "1", "100")
        assert code == 1
        assert "HypothesisViolated" in out

    def test_pack_certificate(self, capsys, tmp_path):
        path = tmp_path / "pack.json"
        code, _, _ = run(capsys, "certify", "pack", "9", "2", "--out", str(path))
        assert code == 0
        doc = json.loads(path.read_text())
        assert doc["format"] == "symcap.pack/1"
        assert doc["toric"]["explicit"] is True


class TestStability:
    def test_m2(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "stability", "2")
        assert code == 0
        doc = json.loads(out)
        assert doc["M"] == "289/36"

    def test_m3(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "stability", "3")
        assert code == 0
        doc = json.loads(out)
        assert "beta" in doc


class TestToric:
    def test_subdivide(self, capsys):
        code, out, _ = run(capsys, "toric", "subdivide", "3", "2")
        assert code == 0
        assert "3 parts" in out

    def test_fig2_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "toric", "fig2", "2", "1")
        assert code == 0
        doc = json.loads(out)
        assert doc["format"] == "symcap.decomposition/1"


class TestFig1Map:
    def test_grid_rows_sorted_and_tagged(self, capsys):
        code, out, _ = run(
            capsys, "fig1-map", "--a-max", "2", "--b-max", "4", "--step", "1",
            "--max-count", "60",
        )
        assert code == 0
        rows = [line.split() for line in out.strip().splitlines()]
        keys = [(Fraction(r[0]), Fraction(r[1])) for r in rows]
        assert keys == sorted(keys)
        tags = {r[4] for r in rows}
        assert "L2.10" in tags and "L2.12" in tags

    def test_determinism(self, capsys):
        args = ["fig1-map", "--a-max", "2", "--b-max", "3", "--step", "1/2",
                "--max-count", "40"]
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2


class TestUsageErrors:
    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_bad_number(self, capsys):
        code, _, err = run(capsys, "pack", "x+y", "1")
        assert code == 2
        assert "error" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "verify", "/nonexistent/cert.json")
        assert code == 2


class TestLimits:
    def test_precision_exhaustion_exit_code(self, capsys):
        # floor of an irrational is opaque to normalization, so sorting the
        # axes cannot certify the tie and the budget runs out: exit 3
        code, _, err = run(capsys, "eh", "floor(root(2,2)),1", "--count", "2")
        assert code == 3
        assert "error" in err

    def test_bits_flag_and_env(self, capsys, monkeypatch):
        code, _, _ = run(capsys, "--bits", "128", "eh", "1,2", "--count", "2")
        assert code == 0
        monkeypatch.setenv("SYMCAP_BITS", "256")
        code, out, _ = run(capsys, "eh", "1,2", "--count", "2")
        assert code == 0
        assert out.strip() == "1, 2"
