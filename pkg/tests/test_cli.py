import json

from tribadic.classifier import builtin_spec
from tribadic.cli import (
    EXIT_EXCLUDED,
    EXIT_FAIL,
    EXIT_PASS,
    EXIT_UNDECIDED,
    EXIT_USAGE,
    main,
    spec_from_dict,
    spec_to_dict,
    table_rows_from_csv,
    table_rows_to_csv,
)
from tribadic.classifier import reproduce_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


class TestExitCodes:
    def test_decided_holds(self, capsys):
        code, rec = run_json(capsys, "classify", "--prime", "397")
        assert code == EXIT_PASS
        assert rec["payload"]["ml"]["status"] == "holds"
        assert rec["payload"]["ml"]["Q"] == 132

    def test_decided_fails(self, capsys):
        code, rec = run_json(capsys, "classify", "--prime", "5")
        assert code == EXIT_PASS
        assert rec["payload"]["ml"]["status"] == "fails"

    def test_excluded(self, capsys):
        code, _ = run(capsys, "classify", "--prime", "11")
        assert code == EXIT_EXCLUDED

    def test_undecided(self, capsys):
        code, _ = run(capsys, "classify", "--prime", "103")
        assert code == EXIT_UNDECIDED

    def test_usage_non_prime(self, capsys):
        assert main(["classify", "--prime", "12"]) == EXIT_USAGE

    def test_usage_bad_flag(self, capsys):
        assert main(["classify", "--no-such-flag"]) == EXIT_USAGE


class TestSchema:
    def test_json_record_fields(self, capsys):
        _, rec = run_json(capsys, "classify", "--prime", "7")
        assert set(rec) == {"command", "params", "status", "payload", "precision_used", "elapsed_ms"}
        assert rec["command"] == "classify"

    def test_payload_round_trips(self, capsys):
        _, rec = run_json(capsys, "scan", "--max", "60")
        assert json.loads(json.dumps(rec["payload"])) == rec["payload"]

    def test_exit_code_is_function_of_status(self, capsys):
        seen = {}
        for argv in (["classify", "--prime", "7"], ["classify", "--prime", "103"],
                     ["classify", "--prime", "11"], ["verify", "--spec", "p3", "--range", "1..50"]):
            code, rec = run_json(capsys, *argv)
            seen.setdefault(rec["status"], set()).add(code)
        assert all(len(codes) == 1 for codes in seen.values())


class TestTable:
    def test_csv_columns_and_round_trip(self, capsys):
        code, out = run(capsys, "table", "--max", "60", "--format", "csv")
        assert code == EXIT_PASS
        lines = out.strip().splitlines()
        assert lines[0] == "p,N,ell,u"
        rows = reproduce_table(60)
        parsed = table_rows_from_csv(table_rows_to_csv(rows))
        assert [r["p"] for r in parsed] == [r.p for r in rows]
        assert [r["u"] for r in parsed] == [r.u for r in rows]

    def test_validate_paper_pass(self, capsys):
        code, rec = run_json(capsys, "table", "--max", "60", "--validate-paper")
        assert code == EXIT_PASS
        assert rec["payload"]["published_validation"]["disagreements"] == []


class TestVerify:
    def test_builtin_pass(self, capsys):
        code, _ = run(capsys, "verify", "--spec", "p2", "--range", "1..2000")
        assert code == EXIT_PASS

    def test_spec_json_round_trip(self):
        for name in ("p2", "p269"):
            spec = builtin_spec(name)
            assert spec_from_dict(json.loads(json.dumps(spec_to_dict(spec)))) == spec

    def test_corrupted_spec_file_fails(self, capsys, tmp_path):
        data = spec_to_dict(builtin_spec("p3"))
        data["cases"][0]["kappa"] += 1
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(data))
        code, rec = run_json(capsys, "verify", "--spec", str(path), "--range", "1..10000")
        assert code == EXIT_FAIL
        assert rec["payload"]["mismatches"]

    def test_unknown_spec_name(self, capsys):
        assert main(["verify", "--spec", "nope", "--range", "1..10"]) == EXIT_USAGE


class TestZero:
    def test_p5_ell21(self, capsys):
        code, rec = run_json(capsys, "zero", "--prime", "5", "--ell", "21")
        assert code == EXIT_PASS
        z = rec["payload"]["zero"]
        assert z["unique"] is True
        assert z["classification"] == {"kind": "rational", "value": "1/3"}
        assert len(z["digits"]) == 24

    def test_p7_ell0_trivial_zero(self, capsys):
        code, rec = run_json(capsys, "zero", "--prime", "7", "--ell", "0")
        assert code == EXIT_PASS
        z = rec["payload"]["zero"]
        assert z["residue"] == 0
        assert z["classification"] == {"kind": "integer", "value": 0}

    def test_p3_multiplier_3_linear_certificate(self, capsys):
        code, rec = run_json(capsys, "zero", "--prime", "3", "--ell", "35", "--multiplier", "3")
        assert code == EXIT_PASS
        assert rec["payload"]["deriv_ok"] is False
        cert = rec["payload"]["linear_certificate"]
        assert cert["a"] == -4 and cert["kappa"] == 4

    def test_no_zero_when_46_fails(self, capsys):
        code, rec = run_json(capsys, "zero", "--prime", "7", "--ell", "1")
        assert code == EXIT_PASS
        assert rec["payload"]["divides"] is False
        assert "no zero" in rec["payload"]["conclusion"]


class TestScan:
    def test_scan_json(self, capsys):
        code, rec = run_json(capsys, "scan", "--max", "100")
        assert code == EXIT_PASS
        assert rec["payload"]["ml"]["holds"] == [3, 83]
        assert rec["payload"]["cube_root_family"] == [47, 53]
        # finite floats must survive encoding (only the nu_p(0) marker becomes "inf")
        assert isinstance(rec["payload"]["cube_root_family_fraction"], float)
        assert abs(rec["payload"]["cube_root_family_expected_density"] - 1 / 12) < 1e-12
