import json
import subprocess
import sys

import pytest

from twisted_lab.cli import cmd_proof_replay, cmd_radical_raw, cmd_validate, cmd_verify, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestValidate:
    def test_pass(self, capsys):
        code, out, _ = run(["validate", "pauli_z2z2"], capsys)
        assert code == 0 and out.rstrip().endswith("PASS")

    def test_axiom_failure(self, tmp_path, capsys):
        path = tmp_path / "r.json"
        code, out, _ = run(["validate", "pauli_broken", "--json", str(path)], capsys)
        assert code == 2
        report = json.loads(path.read_text())
        assert report["schema"] == "twisted-lab/1"
        violation = report["checks"]["axioms"]["violations"][0]
        assert violation["error"] == "AxiomIViolated" and violation["witness"]["triple"] == [1, 1, 2]

    def test_second_negative_fixture(self, capsys):
        code, out, _ = run(["validate", "swap_z3_broken"], capsys)
        assert code == 2 and "AxiomIIViolated" in out

    def test_malformed_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"conductor": 2, "group": [}')
        code, out, _ = run(["validate", str(bad)], capsys)
        assert code == 1 and "ParseError" in out and "line 1" in out

    def test_missing_file(self, capsys):
        code, _, _ = run(["validate", "no_such_instance"], capsys)
        assert code == 1


class TestVerify:
    def test_nc_torus(self):
        report = cmd_verify("nc_torus_3").to_json()
        assert report["passed"]
        dims = [r["dim"] for r in report["checks"]["ideal_scan"]["ideals"]]
        assert dims == [0, 9]
        assert report["checks"]["radical_B"]["radical_dim"] == 0

    def test_swap(self):
        report = cmd_verify("swap_z2").to_json()
        assert report["passed"] and report["checks"]["center"]["center_dim"] == 1

    def test_z4_enumeration(self):
        report = cmd_verify("group_z4_trivial").to_json()
        assert report["checks"]["enumeration"]["ideal_count"] == 16
        assert report["passed"]

    def test_seed_is_reported_even_when_defaulted(self):
        report = cmd_verify("swap_z2", count=10).to_json()
        assert report["subject"]["seed"] == 20240611 and report["subject"]["count"] == 10

    def test_refuses_broken_instance(self, capsys):
        code, out, _ = run(["verify", "pauli_broken"], capsys)
        assert code == 2 and "ideal_scan" not in out

    def test_byte_identical_json(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run(["verify", "dihedral3_trivial", "--seed", "7", "--count", "40", "--json", str(a)], capsys)[0] == 0
        assert run(["verify", "dihedral3_trivial", "--seed", "7", "--count", "40", "--json", str(b)], capsys)[0] == 0
        assert a.read_bytes() == b.read_bytes()


class TestProofReplay:
    def test_z2_sum(self):
        report = cmd_proof_replay("group_z2_trivial", "z2_sum").to_json()
        assert report["passed"]
        assert report["checks"]["replay"]["ideal_dim"] == 1

    def test_pauli_zero_ideal(self, capsys):
        code, out, _ = run(["proof-replay", "pauli_z2z2"], capsys)
        assert code == 0 and "K_order=8" in out

    def test_whole_algebra_is_vacuous(self):
        report = cmd_proof_replay("pauli_z2z2", "unit").to_json()
        assert report["passed"] and report["checks"]["replay"]["codim"] == 0
        assert any("vacuous" in n for n in report["notes"])

    def test_cap(self, capsys):
        code, out, _ = run(["proof-replay", "nc_torus_3", "--cap", "10"], capsys)
        assert code == 3 and "CapExceeded" in out

    def test_wgen_flag(self, capsys):
        code, out, _ = run(["proof-replay", "swap_z2", "--wgen", "unit,signs"], capsys)
        assert code == 0 and "K_order=8" in out

    def test_bad_wgen(self, capsys):
        code, _, _ = run(["proof-replay", "swap_z2", "--wgen", "bogus"], capsys)
        assert code == 1


class TestRadicalRaw:
    @pytest.mark.parametrize("name, dim", [("upper_triangular_2x2", 1), ("m2", 0), ("dual_numbers", 1)])
    def test_examples(self, name, dim):
        report = cmd_radical_raw(name).to_json()
        assert report["checks"]["radical"]["radical_dim"] == dim
        assert report["checks"]["radical"]["quotient_semisimple"] and report["passed"]

    def test_non_associative(self, tmp_path, capsys):
        bad = tmp_path / "na.json"
        bad.write_text(json.dumps({"dim": 2, "structure": [[[0, 1], [0, 0]], [[1, 0], [0, 0]]]}))
        code, out, _ = run(["radical-raw", str(bad)], capsys)
        assert code == 2 and "NotAssociative" in out


class TestMisc:
    def test_info(self, capsys):
        code, out, _ = run(["info", "--json", "-"], capsys)
        data = json.loads(out[out.index("{"):])
        assert code == 0 and "pauli_z2z2" in data["checks"]["shipped"]["instances"]
        code, out, _ = run(["info", "dihedral3_trivial", "--json", "-"], capsys)
        data = json.loads(out[out.index("{"):])
        assert data["checks"]["summary"]["group_abelian"] is False

    def test_usage_error_exit_code(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["verify"])
        assert info.value.code == 1
        with pytest.raises(SystemExit) as info:
            main(["verify", "swap_z2", "--seed", "-1"])
        assert info.value.code == 1

    def test_console_entry_point(self):
        done = subprocess.run(
            [sys.executable, "-m", "twisted_lab.cli", "validate", "group_z4_trivial"],
            capture_output=True, text=True,
        )
        assert done.returncode == 0 and "PASS" in done.stdout

    def test_report_objects(self):
        assert cmd_validate("swap_z2").exit_code == 0
