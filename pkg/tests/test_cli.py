"""CLI surface: output schemas, exit codes, round trips."""

from __future__ import annotations

import csv
import io
import json

import pytest

from weakseq.cli import main

OK, NEGATIVE, USAGE, RESOURCE = 0, 1, 2, 3


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


class TestVerify:
    def test_clean_ordering(self, capsys):
        code, data, _ = run_json(capsys, "verify", "--n", "7", "--set", "1,3,2", "--t", "2")
        assert code == OK
        assert data["violations"] == []
        assert data["classification"] == "sequencing"
        assert data["partial_sums"] == [0, 1, 4, 6]

    def test_violation_exits_1(self, capsys):
        code, data, _ = run_json(capsys, "verify", "--n", "5", "--set", "2,3,1", "--t", "2")
        assert code == NEGATIVE
        assert data["violations"] == [[0, 2]]

    def test_signed_notation(self, capsys):
        code, data, _ = run_json(capsys, "verify", "--n", "11", "--set", "1,-3,2", "--t", "2")
        assert code == OK
        assert data["ordering"] == [1, 8, 2]

    def test_bad_set_is_usage_error(self, capsys):
        code, _, err = run(capsys, "verify", "--n", "7", "--set", "1,8", "--t", "2")
        assert code == USAGE
        assert "error" in err


class TestSearch:
    def test_found(self, capsys):
        code, data, _ = run_json(capsys, "search", "--n", "7", "--set", "1,2,3", "--t", "2")
        assert code == OK
        assert data["status"] == "found"
        assert data["ordering"] == [1, 2, 3]
        assert data["violations"] == []
        assert data["nodes_visited"] >= 3

    def test_budget_exhausted(self, capsys):
        code, data, _ = run_json(
            capsys, "search", "--n", "17", "--set", ",".join(map(str, range(1, 13))),
            "--t", "4", "--budget", "2",
        )
        assert code == NEGATIVE
        assert data["status"] == "budget_exhausted"
        assert data["ordering"] is None


class TestConstructT3:
    def test_example(self, capsys):
        code, data, _ = run_json(capsys, "construct-t3", "--n", "11",
                                 "--set", ",".join(map(str, range(1, 11))))
        assert code == OK
        assert data["status"] == "found"
        assert data["violations"] == []


class TestExhaust:
    def test_z7(self, capsys):
        code, data, _ = run_json(capsys, "exhaust", "--n", "7", "--t", "2", "--k", "3..6",
                                 "--threads", "1")
        assert code == OK
        assert data["sequenceable"] == data["subsets_checked"]
        assert data["undecided"] == [] and data["counterexamples"] == []

    def test_empty_range(self, capsys):
        code, data, _ = run_json(capsys, "exhaust", "--n", "3", "--t", "2", "--k", "3..3",
                                 "--threads", "1")
        assert code == OK
        assert data["subsets_checked"] == 0


class TestBuildCoeff:
    def test_build_degree(self, capsys):
        code, data, _ = run_json(capsys, "build", "--family", "Q", "--t", "6", "--ell", "11")
        assert code == OK
        assert data["degree"] == 110

    def test_build_dump(self, capsys, tmp_path):
        path = tmp_path / "factors.json"
        code, data, _ = run_json(capsys, "build", "--family", "Q", "--t", "2", "--ell", "3",
                                 "--dump", str(path))
        assert code == OK
        dumped = json.loads(path.read_text())
        assert len(dumped) == 6
        assert all(set(f) == {"vars", "coeffs"} for f in dumped)
        assert {"vars": [0], "coeffs": [1]} in dumped

    def test_coeff_example(self, capsys):
        code, data, _ = run_json(capsys, "coeff", "--family", "Q", "--t", "2", "--ell", "3",
                                 "--monomial", "2,2,2")
        assert code == OK
        assert data["coefficient"] == "-1"

    def test_state_cap_env_gives_resource_exit(self, capsys, monkeypatch):
        monkeypatch.setenv("WEAKSEQ_STATE_CAP", "4")
        code, _, err = run(capsys, "coeff", "--family", "Q", "--t", "3", "--ell", "5",
                           "--monomial", "4,4,4,4,4")
        assert code == RESOURCE
        assert "cap" in err

    def test_bad_family_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            run(capsys, "build", "--family", "Z", "--t", "2", "--ell", "3")
        assert exc_info.value.code == USAGE


class TestCertifyTheorem:
    def test_certify_universal(self, capsys, tmp_path):
        out = tmp_path / "cert.json"
        code, data, _ = run_json(
            capsys, "certify", "--variant", "main", "--t", "2", "--ell", "3",
            "--k-scope", "at-least:4", "--monomial", "2,2,2", "--out", str(out),
        )
        assert code == OK
        assert data["coefficient"] == "-1"
        assert data["excluded_primes"] == []
        saved = json.loads(out.read_text())
        assert saved[0]["coefficient"] == "-1"

    def test_certify_zero_coefficient(self, capsys):
        code, data, _ = run_json(
            capsys, "certify", "--variant", "main", "--t", "2", "--ell", "5",
            "--k-scope", "at-least:6", "--monomial", "0,3,4,4,4",
        )
        assert code == NEGATIVE
        assert data["error"] == "ZeroCoefficientError"

    def test_theorem_reference_complete(self, capsys):
        code, data, _ = run_json(capsys, "theorem", "--variant", "main", "--t", "6")
        assert code == OK
        assert data["verdict"] == "complete"
        assert data["base_case"].startswith("k <= 12")

    def test_theorem_from_file_incomplete(self, capsys, tmp_path):
        from weakseq.certify import reference_certificates, save_certificates

        tail = [c for c in reference_certificates("main", 6) if c.k_scope.kind == "at_least"]
        path = tmp_path / "tail.json"
        save_certificates(str(path), tail)
        code, data, _ = run_json(capsys, "theorem", "--variant", "main", "--t", "6",
                                 "--certs", str(path))
        assert code == NEGATIVE
        assert data["verdict"] == "incomplete"

    def test_theorem_gcd_values_round_trip(self, capsys):
        code, data, _ = run_json(capsys, "theorem", "--variant", "cmpp", "--t", "7")
        assert code == OK
        rows = {r["k"]: r for r in data["rows"]}
        assert rows["k=17"]["gcd"] == "13"
        assert rows["k=17"]["size_excluded_primes"] == ["13"]
        assert int(rows["k=16"]["gcd"]) == 1


class TestMonteCarlo:
    def test_failure_mode(self, capsys):
        code, data, _ = run_json(capsys, "montecarlo", "--n", "101", "--k", "10", "--t", "4",
                                 "--trials", "500", "--seed", "9")
        assert code == OK
        assert data["kind"] == "failure_probability"
        assert data["seed"] == 9

    def test_collision_mode(self, capsys):
        code, data, _ = run_json(capsys, "montecarlo", "--n", "13", "--t", "3",
                                 "--trials", "400", "--seed", "3",
                                 "--set", ",".join(map(str, range(1, 13))))
        assert code == OK
        assert data["kind"] == "collision_mean"
        assert "sharper_bound" in data

    def test_seed_required(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            run(capsys, "montecarlo", "--n", "13", "--k", "4", "--t", "2", "--trials", "10")
        assert exc_info.value.code == USAGE

    def test_k_or_set_required(self, capsys):
        code, _, err = run(capsys, "montecarlo", "--n", "13", "--t", "2",
                           "--trials", "10", "--seed", "1")
        assert code == USAGE


class TestReproduceTables:
    def test_fast_tier_main(self, capsys, tmp_path):
        code, out, err = run(capsys, "reproduce-tables", "--variant", "main", "--t", "6",
                             "--tier", "fast", "--out-dir", str(tmp_path))
        assert code == OK
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["k", "ell", "deg", "monomial", "coefficient"]
        body = rows[1:]
        assert len(body) == 9
        by_key = {(r[0], r[1]): r for r in body}
        # ell=11 tail row carries the recomputed coefficient
        assert by_key[(">=16", "11")][4] == str(-(3**4 * 5 * 47 * 97 * 271 * 15985681))
        # ell=12 rows are degree-only in the fast tier
        assert by_key[("16", "12")][2] == "125" and by_key[("16", "12")][4] == ""
        assert by_key[(">=17", "12")][2] == "126" and by_key[(">=17", "12")][4] == ""
        certs = json.loads((tmp_path / "main_t6_fast_certificates.json").read_text())
        assert len(certs) == 7  # every row except the two ell=12 ones
