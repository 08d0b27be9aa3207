import json
import subprocess
import sys

import jsonschema
import pytest

from plastic_circulant.cli import main, schema_path


@pytest.fixture(scope="module")
def validator():
    with schema_path().open(encoding="utf-8") as fh:
        schema = json.load(fh)
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, validator, *argv, expect=0):
    code, out, err = run(capsys, *argv)
    assert code == expect, err
    doc = json.loads(out)
    validator.validate(doc)
    return doc


def scalar(doc, method):
    s = doc["scalar"]
    entries = s.get("methods", [s])
    return next(e for e in entries if e["method"] == method)


class TestSeq:
    def test_perrin_backward(self, capsys, validator):
        doc = run_json(capsys, validator, "seq", "--preset", "perrin", "--from", "-3", "--to", "5")
        assert [int(r["value"]) for r in doc["terms"]] == [2, 1, -1, 3, 0, 2, 3, 2, 5]
        assert [r["n"] for r in doc["terms"]] == list(range(-3, 6))

    def test_vdl_seed(self, capsys, validator):
        doc = run_json(capsys, validator, "seq", "--preset", "vanderlaan", "--from", "0", "--to", "0")
        assert doc["terms"] == [{"n": 0, "value": "0"}]

    def test_sums_column(self, capsys, validator):
        doc = run_json(capsys, validator, "seq", "--init", "1,1,1", "--from", "0", "--to", "9", "--sums")
        assert len(doc["terms"]) == 10
        for row in doc["terms"]:
            assert row["sum"] == row["sumIdentity"]

    def test_squares_column_from_offset(self, capsys, validator):
        doc = run_json(capsys, validator, "seq", "--preset", "perrin", "--from", "2", "--to", "8",
                       "--squares")
        assert doc["terms"][1] == {"n": 3, "value": "3", "squares": "22", "squaresIdentity": "22"}
        assert all(r["squares"] == r["squaresIdentity"] for r in doc["terms"])

    def test_big_values_are_strings(self, capsys, validator):
        doc = run_json(capsys, validator, "seq", "--preset", "perrin", "--from", "400", "--to", "400")
        assert int(doc["terms"][0]["value"]) > 2**53

    @pytest.mark.parametrize("argv", [
        ("seq", "--preset", "perrin", "--init", "1,1,1", "--to", "3"),
        ("seq", "--to", "3"),
        ("seq", "--preset", "perrin", "--from", "5", "--to", "3"),
        ("seq", "--init", "1,1,1", "--coeffs", "1,1,0", "--from", "-1", "--to", "2"),
        ("seq", "--init", "1,1,1", "--coeffs", "0,0,2", "--from", "-1", "--to", "2"),
        ("seq", "--init", "1,1", "--to", "2"),
        ("bogus",),
    ])
    def test_usage_errors(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 2
        assert out == ""
        assert err


class TestEig:
    def test_vdl_both(self, capsys, validator):
        doc = run_json(capsys, validator, "eig", "--preset", "vanderlaan", "--n", "3", "--method", "both")
        assert doc["discrepancy"] <= 1e-9
        assert max(r["relErr"] for r in doc["spectrum"]) <= 1e-9

    def test_perrin_oracle(self, capsys, validator):
        doc = run_json(capsys, validator, "eig", "--preset", "perrin", "--n", "4", "--method", "oracle")
        got = [complex(r["re"], r["im"]) for r in doc["spectrum"]]
        for g, e in zip(got, (8, 1 + 3j, 2, 1 - 3j)):
            assert abs(g - e) <= 1e-9

    def test_trivial(self, capsys, validator):
        doc = run_json(capsys, validator, "eig", "--init", "1,1,1", "--n", "1", "--method", "closed")
        assert len(doc["spectrum"]) == 1
        assert abs(complex(doc["spectrum"][0]["re"], doc["spectrum"][0]["im"]) - 1) <= 1e-12

    def test_zero_order_is_usage_error(self, capsys):
        assert run(capsys, "eig", "--preset", "perrin", "--n", "0")[0] == 2

    def test_non_plastic_closed_is_domain_error(self, capsys):
        code, _, err = run(capsys, "eig", "--init", "1,1,1", "--coeffs", "1,1,1", "--n", "3",
                           "--method", "closed")
        assert code == 3
        assert "UnsupportedFamily" in err

    def test_non_plastic_oracle_still_works(self, capsys, validator):
        run_json(capsys, validator, "eig", "--init", "1,1,1", "--coeffs", "1,1,1", "--n", "3",
                 "--method", "oracle")


class TestScalars:
    def test_det_perrin_exact(self, capsys, validator):
        doc = run_json(capsys, validator, "det", "--preset", "perrin", "--n", "4", "--method", "exact")
        assert scalar(doc, "exact")["value"] == "160"

    def test_norm_cordonnier_closed(self, capsys, validator):
        doc = run_json(capsys, validator, "norm", "--preset", "cordonnier", "--n", "4", "--method", "closed")
        assert scalar(doc, "closed")["value"] == "5"

    def test_det_vdl_fallback(self, capsys, validator):
        doc = run_json(capsys, validator, "det", "--preset", "vanderlaan", "--n", "2", "--method", "closed")
        e = scalar(doc, "closed")
        assert e["fallback"] is True
        assert abs(complex(e["re"], e["im"]) + 1) <= 1e-9

    def test_det_all_methods_agree(self, capsys, validator):
        doc = run_json(capsys, validator, "det", "--preset", "perrin", "--n", "9", "--method", "all")
        exact = int(scalar(doc, "exact")["value"])
        for m in ("closed", "eigprod"):
            e = scalar(doc, m)
            assert abs(complex(e["re"], e["im"]) - exact) <= 1e-6 * abs(exact)
        assert doc["discrepancy"] <= 1e-6

    def test_det_corollary(self, capsys, validator):
        doc = run_json(capsys, validator, "det", "--preset", "cordonnier", "--n", "5", "--method",
                       "closed,exact", "--corollary")
        exact = int(scalar(doc, "exact")["value"])
        e = scalar(doc, "closed")
        assert abs(complex(e["re"], e["im"]) - exact) <= 1e-6 * (1 + abs(exact))

    def test_norm_all(self, capsys, validator):
        doc = run_json(capsys, validator, "norm", "--preset", "perrin", "--n", "4", "--method", "all")
        assert [scalar(doc, m)["value"] for m in ("closed", "one", "inf")] == ["8", "8", "8"]

    def test_norm_signed_row_is_domain_error(self, capsys):
        code, out, err = run(capsys, "norm", "--init", "1,-2,3", "--n", "4", "--method", "closed")
        assert code == 3
        assert out == ""
        assert "NonnegativityViolated" in err

    def test_norm_signed_row_oracle_ok(self, capsys, validator):
        run_json(capsys, validator, "norm", "--init", "1,-2,3", "--n", "4", "--method", "oracle,one")

    def test_unknown_method(self, capsys):
        assert run(capsys, "det", "--preset", "perrin", "--n", "4", "--method", "magic")[0] == 2

    def test_table_format(self, capsys):
        code, out, _ = run(capsys, "--format", "table", "det", "--preset", "vanderlaan", "--n", "2",
                           "--method", "closed,exact")
        assert code == 0
        assert out.startswith("# det ")
        assert "(fallback)" in out
        assert "exact\t-1" in out


class TestVerify:
    ARGS = ("verify", "--n-max", "16", "--trials", "10", "--seed", "42")

    def test_default_run(self, capsys, validator):
        doc = run_json(capsys, validator, *self.ARGS)
        counts = doc["report"]["summary"]["counts"]
        assert counts["fail"] == 0
        assert counts["erratum-expected-fail"] == 4

    def test_trivial_run(self, capsys, validator):
        run_json(capsys, validator, "verify", "--n-max", "1", "--trials", "0", "--seed", "0")

    def test_byte_identical(self, capsys):
        first = run(capsys, *self.ARGS)[1]
        assert run(capsys, *self.ARGS)[1] == first

    def test_hard_failure_exit_code(self, capsys, validator):
        doc = run_json(capsys, validator, "verify", "--n-max", "6", "--trials", "0",
                       "--tol-eig", "1e-30", expect=1)
        assert doc["report"]["summary"]["counts"]["fail"] > 0

    def test_bad_config_is_usage_error(self, capsys):
        assert run(capsys, "verify", "--n-max", "0")[0] == 2

    def test_out_and_timestamp(self, capsys, tmp_path, validator):
        path = tmp_path / "report.json"
        code, out, _ = run(capsys, "verify", "--n-max", "4", "--trials", "1",
                           "--timestamp", "2026-01-01T00:00:00Z", "--out", str(path))
        assert code == 0 and out == ""
        doc = json.loads(path.read_text(encoding="utf-8"))
        validator.validate(doc)
        assert doc["report"]["meta"]["timestamp"] == "2026-01-01T00:00:00Z"

    def test_table(self, capsys):
        code, out, _ = run(capsys, "--format", "table", "verify", "--n-max", "3", "--trials", "0")
        assert code == 0
        assert "erratum-expected-fail" in out


class TestBench:
    def rows(self, doc):
        return {(r["n"], r["method"]): r["seconds"] for r in doc["bench"]}

    def test_trivial(self, capsys, validator):
        doc = run_json(capsys, validator, "bench", "--n-list", "1", "--preset", "vanderlaan", "--repeat", "1")
        assert len(doc["bench"]) == 4
        assert all(r["seconds"] is not None for r in doc["bench"])

    def test_complexity_order(self, capsys, validator):
        # quadratic oracle vs linear closed form, with +-50% slack on 16x and 4x
        doc = run_json(capsys, validator, "bench", "--n-list", "64,256", "--preset", "perrin",
                       "--repeat", "5")
        t = self.rows(doc)
        oracle = t[256, "eig-oracle"] / t[64, "eig-oracle"]
        closed = t[256, "eig-closed"] / t[64, "eig-closed"]
        assert 8 <= oracle <= 24, oracle
        assert 2 <= closed <= 6, closed
        assert t[256, "det-exact"] is None  # above the default cap

    def test_det_exact_dominates(self, capsys, validator):
        doc = run_json(capsys, validator, "bench", "--n-list", "128", "--preset", "cordonnier",
                       "--repeat", "3")
        t = self.rows(doc)
        assert max(t, key=t.get) == (128, "det-exact")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "plastic_circulant", "det", "--preset", "perrin",
                           "--n", "4"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["scalar"]["value"] == "160"


def test_schema_ships_with_package():
    assert schema_path().name == "output.schema.json"
