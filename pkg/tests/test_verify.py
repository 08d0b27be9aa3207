import pytest

from plastic_circulant.exceptions import ConfigInvalid
from plastic_circulant.verify import (
    ERRATUM,
    ERRATUM_CHECKS,
    FAIL,
    FALLBACK,
    PASS,
    CheckRecord,
    VerificationReport,
    VerifyConfig,
    check_erratum_binet_vdl,
    check_erratum_sum_squares,
    run_suite,
)

# one family per result in scope
REQUIRED_FAMILIES = {
    "sums.linear", "sums.squares.anchor_T", "sums.squares.printed_T",
    "eigenvalues.closed",
    "eigenvalues.preset.cordonnier", "eigenvalues.preset.perrin", "eigenvalues.preset.vanderlaan",
    "norm.closed", "norm.row_sum_identity",
    "norm.preset.cordonnier", "norm.preset.perrin", "norm.preset.vanderlaan",
    "determinant.closed",
    "determinant.preset.cordonnier", "determinant.preset.perrin", "determinant.preset.vanderlaan",
    "roots.symmetric_functions", "binet.cordonnier", "binet.perrin_power_sum",
    "binet.vanderlaan.as_printed", "binet.vanderlaan.index_shift", "binet.general",
    "spectrum.row_sum_eigenvalue", "spectrum.conjugate_symmetry", "spectrum.fourier_eigenvectors",
    "spectrum.eigenvalue_product", "spectrum.normality",
    "norm.one_inf_equality", "determinant.denominator_identity", "determinant.denominator_nonzero",
    "determinant.product_identity", "determinant.branch_symmetry",
}

EXPECTED_ERRATA = {
    ("binet.vanderlaan.as_printed", "vanderlaan"),
    ("sums.squares.printed_T", "cordonnier"),
    ("sums.squares.printed_T", "perrin"),
    ("sums.squares.printed_T", "vanderlaan"),
}


@pytest.fixture(scope="module")
def default_report():
    return run_suite(VerifyConfig(n_max=16, trials=10, random_seed=42))


def test_default_has_no_failures(default_report):
    assert default_report.ok
    assert default_report.summary["counts"][FAIL] == 0


def test_errata_are_exactly_the_documented_ones(default_report):
    got = {(r.name, r.params["spec"]) for r in default_report.by_status(ERRATUM)}
    assert got == EXPECTED_ERRATA
    assert {name for name, _ in got} == set(ERRATUM_CHECKS)


def test_coverage(default_report):
    assert REQUIRED_FAMILIES <= {r.name for r in default_report.checks}


def test_fallbacks_are_flagged(default_report):
    fb = default_report.by_status(FALLBACK)
    assert any(r.params["spec"] == "vanderlaan" and r.params["n"] == 2 for r in fb)
    assert all(r.name.endswith(".fallback") for r in fb)


def test_deterministic():
    cfg = VerifyConfig(n_max=16, trials=10, random_seed=42)
    assert run_suite(cfg).to_json() == run_suite(cfg).to_json()


def test_seed_changes_random_specs():
    a = run_suite(VerifyConfig(n_max=3, trials=3, random_seed=1))
    b = run_suite(VerifyConfig(n_max=3, trials=3, random_seed=2))
    assert a.to_json() != b.to_json()


def test_order_one():
    rep = run_suite(VerifyConfig(n_max=1, trials=0, random_seed=0))
    assert rep.ok
    for rec in rep.checks:
        worst = rec.params.get("worst", {})
        if rec.name.startswith(("eigenvalues", "determinant.closed", "spectrum")):
            assert worst.get("n", 1) == 1


def test_records_are_sorted(default_report):
    keys = [r.name for r in default_report.checks]
    assert keys == sorted(keys)


def test_meta_records_tolerances(default_report):
    meta = default_report.meta
    assert meta["randomSeed"] == 42
    assert meta["tolerances"]["eig"] == 1e-9
    assert meta["tolerances"]["det"] == 1e-6
    assert meta["timestamp"] is None


def test_tight_tolerance_produces_hard_failure():
    rep = run_suite(VerifyConfig(n_max=8, trials=0, tol_eig=1e-30))
    assert not rep.ok
    assert any(r.name == "eigenvalues.closed" for r in rep.by_status(FAIL))


@pytest.mark.parametrize("kwargs", [{"n_max": 0}, {"trials": -1}, {"tol_eig": 0}, {"det_n_cap": 0}])
def test_config_invalid(kwargs):
    with pytest.raises(ConfigInvalid):
        VerifyConfig(**kwargs)


class TestErratumRecords:
    def test_sum_squares(self):
        recs = {r.params["spec"]: r for r in check_erratum_sum_squares()}
        perrin = recs["perrin"]
        assert (perrin.expected, perrin.actual, perrin.status) == ("22", "14", ERRATUM)
        cord = recs["cordonnier"]
        assert (cord.expected, cord.actual, cord.status) == ("7", "3", ERRATUM)

    def test_anchor_companion_passes(self, default_report):
        recs = [r for r in default_report.checks
                if r.name == "sums.squares.anchor_T" and r.params["spec"] == "perrin"]
        assert recs and recs[0].status == PASS and recs[0].params["T"] == 10

    def test_binet_vdl(self):
        printed, shift = check_erratum_binet_vdl()
        assert printed.status == ERRATUM
        assert printed.expected == "0"
        assert float(printed.actual) == pytest.approx(1, abs=1e-9)
        assert shift.status == PASS
        assert shift.params["points"] == 16  # n = 1..min(n_max, 30)

    def test_binet_vdl_shift_to_30(self):
        _, shift = check_erratum_binet_vdl(VerifyConfig(n_max=64))
        assert shift.params["points"] == 30
        assert shift.status == PASS


def test_report_round_trip():
    rec = CheckRecord("x", {"n": 1}, "1", "1", 0.0, 0.0, PASS)
    rep = VerificationReport({"m": 1}, [rec])
    d = rep.to_dict()
    assert d["checks"][0]["relErr"] == 0.0
    assert d["summary"]["counts"][PASS] == 1
