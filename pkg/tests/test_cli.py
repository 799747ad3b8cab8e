"""Command-line behaviour: reports, JSON stability, exit codes."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from gsbmaps.cli import main

BIQUATERNION_DOC = {
    "prime": 2,
    "generators": [
        {"name": "q1", "order": 2},
        {"name": "q2", "order": 2},
        {"name": "q3", "order": 2},
    ],
    "algebras": {
        "Δ1": {"class": {"q1": 1, "q2": 1}, "degree": 4},
        "Δ2": {"class": {"q1": 1, "q3": 1}, "degree": 4},
        "Δ3": {"class": {"q2": 1, "q3": 1}, "degree": 4},
    },
    "aliases": {"Delta1": "Δ1", "Delta2": "Δ2", "Delta3": "Δ3"},
}

MIXED_DOC = {
    "prime": 2,
    "generators": [
        {"name": "g1", "order": 4},
        {"name": "g2", "order": 2},
        {"name": "g3", "order": 2},
    ],
    "algebras": {
        "D1": {"class": {"g1": 1}, "degree": 4},
        "D2": {"class": {"g1": 2, "g2": 1}, "degree": 4},
        "D3": {"class": {"g1": 2, "g3": 1}, "degree": 4},
    },
    "varieties": {"left": "X(2;D1) x X(2;D2)", "right": "X(2;D1) x X(2;D3)"},
}


@pytest.fixture()
def biq_path(tmp_path):
    path = tmp_path / "biquaternion.json"
    path.write_text(json.dumps(BIQUATERNION_DOC, ensure_ascii=False), encoding="utf-8")
    return str(path)


@pytest.fixture()
def mixed_path(tmp_path):
    path = tmp_path / "mixed.json"
    path.write_text(json.dumps(MIXED_DOC, ensure_ascii=False), encoding="utf-8")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestReports:
    def test_reduced_index_report(self, capsys, mixed_path):
        code, out, _ = run_cli(
            capsys,
            "-i",
            mixed_path,
            "reduced-index",
            "--target",
            "D3",
            "--base",
            "X(2;D1) x X(2;D2)",
        )
        assert code == 0
        assert "reduced index of D3" in out and ": 2" in out
        assert "(2, 2)" in out

    def test_reduced_index_json(self, capsys, mixed_path):
        code, out, _ = run_cli(
            capsys,
            "-i",
            mixed_path,
            "--json",
            "reduced-index",
            "--target",
            "D3",
            "--base",
            "left",  # named variety
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["index"] == 2
        assert payload["witness"] == [2, 2]

    def test_equivalent_false_names_refuting_factor(self, capsys, biq_path):
        code, out, _ = run_cli(
            capsys,
            "-i",
            biq_path,
            "equivalent",
            "--left",
            "X(2;Δ1) x X(2;Δ2)",
            "--right",
            "X(2;Δ1) x X(2;Δ3)",
        )
        assert code == 0
        assert "equivalent: false" in out
        assert "refuting factor: X(2;Δ3)" in out

    def test_equivalent_true(self, capsys, mixed_path):
        code, out, _ = run_cli(
            capsys, "-i", mixed_path, "equivalent", "--left", "left", "--right", "right"
        )
        assert code == 0
        assert "equivalent: true" in out
        # the relation criterion does not apply here (unequal exponents)
        assert "balanced relations" not in out

    def test_equivalent_attaches_relations_when_applicable(self, capsys, biq_path):
        code, out, _ = run_cli(
            capsys,
            "-i",
            biq_path,
            "--json",
            "equivalent",
            "--left",
            "X(1;Δ1) x X(1;Δ2)",
            "--right",
            "X(1;Δ1) x X(1;Δ3)",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["equivalent"] is True
        assert payload["relations"] == {
            "left_over_right": [[1, 2], [1, 1]],
            "right_over_left": [[1, 2], [1, 1]],
        }

    def test_equivalent_relations_absent_when_no_witness(self, capsys, biq_path):
        code, out, _ = run_cli(
            capsys,
            "-i",
            biq_path,
            "--json",
            "equivalent",
            "--left",
            "X(2;Δ1) x X(2;Δ2)",
            "--right",
            "X(2;Δ1) x X(2;Δ3)",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["equivalent"] is False
        assert payload["relations"] is None

    def test_index_and_exponent(self, capsys, mixed_path):
        code, out, _ = run_cli(capsys, "-i", mixed_path, "index", "--algebra", "D1")
        assert code == 0 and "index of D1: 4" in out
        code, out, _ = run_cli(capsys, "-i", mixed_path, "exponent", "--algebra", "D2")
        assert code == 0 and "exponent of D2: 2" in out

    def test_subgroup_comparison(self, capsys, mixed_path):
        code, out, _ = run_cli(
            capsys,
            "-i",
            mixed_path,
            "subgroup",
            "--generators",
            "D1,D2",
            "--equals",
            "D1,D3",
        )
        assert code == 0
        assert "order 8" in out
        assert "no" in out

    def test_rational_map_forward_only(self, capsys, biq_path):
        code, out, _ = run_cli(
            capsys,
            "-i",
            biq_path,
            "rational-map",
            "--source",
            "X(2;Δ1) x X(2;Δ2)",
            "--target",
            "X(2;Δ3)",
        )
        assert code == 0
        assert "rational map exists: no" in out

    def test_motive_iso(self, capsys, biq_path):
        code, out, _ = run_cli(
            capsys,
            "-i",
            biq_path,
            "motive-iso",
            "--left",
            "X(1;Δ1) x X(1;Δ2)",
            "--right",
            "X(1;Δ1) x X(1;Δ3)",
        )
        assert code == 0
        assert "isomorphic: true" in out

    def test_compare_families(self, capsys, biq_path):
        code, out, _ = run_cli(
            capsys,
            "-i",
            biq_path,
            "compare-families",
            "--left",
            "Delta1,Delta2",
            "--right",
            "Delta1,Delta3",
        )
        assert code == 0
        assert "verdict: PARTIAL" in out
        assert "M^{1,1}" in out

    def test_unicode_and_ascii_aliases_agree(self, capsys, biq_path):
        _, out_unicode, _ = run_cli(
            capsys, "-i", biq_path, "index", "--algebra", "Δ1"
        )
        _, out_ascii, _ = run_cli(
            capsys, "-i", biq_path, "index", "--algebra", "Delta1"
        )
        assert "4" in out_unicode and "4" in out_ascii


class TestJsonStability:
    def test_byte_stable_across_runs(self, capsys, biq_path):
        argv = [
            "-i",
            biq_path,
            "--json",
            "equivalent",
            "--left",
            "X(2;Δ1) x X(2;Δ2)",
            "--right",
            "X(2;Δ1) x X(2;Δ3)",
        ]
        _, first, _ = run_cli(capsys, *argv)
        _, second, _ = run_cli(capsys, *argv)
        assert first == second

    def test_verify_examples_json_stable(self, capsys):
        _, first, _ = run_cli(capsys, "--json", "verify-examples")
        _, second, _ = run_cli(capsys, "--json", "verify-examples")
        assert first == second
        payload = json.loads(first)
        assert payload["pass"] is True


class TestExitCodes:
    def test_missing_instance_file(self, capsys):
        code, _, err = run_cli(capsys, "-i", "/nonexistent.json", "index", "--algebra", "D1")
        assert code == 2
        assert "cannot read" in err

    def test_instance_required(self, capsys):
        code, _, err = run_cli(capsys, "index", "--algebra", "D1")
        assert code == 2

    def test_bad_expression(self, capsys, biq_path):
        code, _, err = run_cli(
            capsys, "-i", biq_path, "reduced-index", "--target", "Δ1", "--base", "X(2;"
        )
        assert code == 2

    def test_invariant_violation_in_instance(self, capsys, tmp_path):
        doc = json.loads(json.dumps(BIQUATERNION_DOC))
        doc["algebras"]["bad"] = {"class": {"q1": 1, "q2": 1}, "degree": 8}
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc, ensure_ascii=False), encoding="utf-8")
        code, _, err = run_cli(capsys, "-i", str(path), "index", "--algebra", "Δ1")
        assert code == 2
        assert "not a division algebra" in err

    def test_precondition_violation(self, capsys, tmp_path):
        # mixing degrees trips the common-degree hypothesis: exit 3
        doc = json.loads(json.dumps(BIQUATERNION_DOC))
        doc["algebras"]["Q"] = {"class": {"q1": 1}, "degree": 2}
        path = tmp_path / "mixed_degrees.json"
        path.write_text(json.dumps(doc, ensure_ascii=False), encoding="utf-8")
        code, _, err = run_cli(
            capsys,
            "-i",
            str(path),
            "reduced-index",
            "--target",
            "Δ1",
            "--base",
            "X(1;Q)",
        )
        assert code == 3
        assert "common degree" in err

    def test_out_of_range_reduced_dimension(self, capsys, biq_path):
        code, _, err = run_cli(
            capsys, "-i", biq_path, "reduced-index", "--target", "Δ1", "--base", "X(4;Δ2)"
        )
        assert code == 3

    def test_verify_examples_ok(self, capsys):
        code, out, _ = run_cli(capsys, "verify-examples")
        assert code == 0
        assert "FAIL" not in out
        assert out.count("PASS") == 9

    def test_verify_examples_mismatch_exits_4(self, capsys, monkeypatch):
        import gsbmaps.cli as cli_mod

        def broken(inst):
            return [("deliberately false claim", lambda: False)]

        monkeypatch.setattr(cli_mod, "_biquaternion_claims", broken)
        code, out, _ = run_cli(capsys, "verify-examples")
        assert code == 4
        assert "FAIL" in out

    def test_unknown_algebra_name(self, capsys, biq_path):
        code, _, err = run_cli(capsys, "-i", biq_path, "index", "--algebra", "Δ9")
        assert code == 2
        assert "unknown algebra" in err


class TestModuleEntryPoint:
    def test_python_dash_m(self):
        proc = subprocess.run(
            [sys.executable, "-m", "gsbmaps", "verify-examples"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "all claims hold" in proc.stdout
