"""Command-line surface: addressing, exit codes, deterministic reports."""

import json

import pytest

from conicfree.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_corpus_entry(capsys):
    code, out, _ = run_cli(capsys, "analyze", "corpus:celal_three_conics", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["mdr"]["d1"] == 2
    assert doc["tjurina"]["stabilized"] == 19
    assert doc["freeness"]["verdict"] == "free"
    assert doc["freeness"]["nu"] == 0
    assert doc["checks"]["bezout_count"] is True


def test_analyze_json_is_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "analyze", "corpus:two_conics_a7_e1", "--json")
    _, out2, _ = run_cli(capsys, "analyze", "corpus:two_conics_a7_e1", "--json")
    assert out1 == out2


def test_analyze_report_has_no_floats(capsys):
    _, out, _ = run_cli(capsys, "analyze", "corpus:two_conics_a7_e1", "--json")

    def no_floats(node):
        if isinstance(node, float):
            return False
        if isinstance(node, dict):
            return all(no_floats(v) for v in node.values())
        if isinstance(node, list):
            return all(no_floats(v) for v in node)
        return True

    assert no_floats(json.loads(out))


def test_analyze_smooth_conic_is_inconclusive(capsys):
    code, out, _ = run_cli(capsys, "analyze", "x^2+y^2-z^2")
    assert code == 2
    assert "tau = 0" in out and "smooth" in out


def test_analyze_nonreduced_input_unstable_window(capsys):
    code, out, _ = run_cli(capsys, "analyze", "x^2*y", "--json")
    assert code == 2
    doc = json.loads(out)
    assert doc["tjurina"]["unstable"] is True
    assert doc["tjurina"]["stabilized"] is None
    assert doc["freeness"] is None


def test_analyze_parse_error_exit_one(capsys):
    code, _, err = run_cli(capsys, "analyze", "x^2+y")
    assert code == 1 and "mixed degrees" in err
    code, _, err = run_cli(capsys, "analyze", "x^^2")
    assert code == 1


def test_analyze_unknown_corpus_name(capsys):
    code, _, err = run_cli(capsys, "analyze", "corpus:nope")
    assert code == 1 and "unknown corpus entry" in err


def test_analyze_window_extend(capsys):
    code, out, _ = run_cli(
        capsys, "analyze", "corpus:two_conics_a7_e1", "--json", "--window-extend", "2"
    )
    doc = json.loads(out)
    assert len(doc["tjurina"]["window"]) == 5
    assert [v for _, v in doc["tjurina"]["window"]] == [7] * 5


def test_analyze_modular_off_matches_default(capsys):
    _, out_on, _ = run_cli(capsys, "analyze", "corpus:ploski_m2", "--json")
    _, out_off, _ = run_cli(
        capsys, "analyze", "corpus:ploski_m2", "--json", "--modular-linalg", "off"
    )
    assert json.loads(out_on) == json.loads(out_off)


def test_analyze_arrangement_file(tmp_path, capsys):
    path = tmp_path / "arr.txt"
    path.write_text(
        "# the deformed triconical sextic\n"
        "2*x^2+2*y^2+3*x*z+z^2\n"
        "2*x^2+2*y^2-3*x*z+z^2\n"
        "x^2+4*y^2-z^2\n"
    )
    code, out, _ = run_cli(capsys, "analyze", str(path), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["freeness"]["verdict"] == "nearly_free"
    assert doc["survey"] is not None


def test_analyze_single_expression_file(tmp_path, capsys):
    path = tmp_path / "curve.txt"
    path.write_text("x^2*y^2+z^4\n")
    code, out, _ = run_cli(capsys, "analyze", str(path), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["tjurina"]["stabilized"] == 6
    assert doc["survey"] is None


def test_classify_p4(capsys):
    code, out, err = run_cli(capsys, "classify", "corpus:p4_four_conics", "--json")
    # survey incomplete (complex nodes) -> exit 2 with warning
    assert code == 2 and "incomplete" in err
    doc = json.loads(out)
    points = sorted(
        rec["point"] for rec in doc["survey"]["records"] if rec["type"] == "A7"
    )
    assert points == ["(-1:0:1)", "(-2:0:1)", "(0:0:1)", "(1:0:1)"]


def test_classify_complete_survey_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "classify", "corpus:celal_three_conics", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["survey"]["complete"] is True
    assert doc["survey"]["inventory"] == {"A5": 3, "D4": 1}


def test_classify_rejects_non_arrangement(capsys):
    code, _, err = run_cli(capsys, "classify", "x^2*y^2+z^4")
    assert code == 1 and "arrangement" in err


def test_classify_rejects_singular_component(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("x*y\nx^2+y^2-z^2\n")
    code, _, err = run_cli(capsys, "classify", str(path))
    assert code == 1 and "smooth" in err


def test_classify_rejects_wrong_degree_component(tmp_path, capsys):
    path = tmp_path / "cubic.txt"
    path.write_text("x^3+y^3+z^3\nx^2+y^2-z^2\n")
    code, _, err = run_cli(capsys, "classify", str(path))
    assert code == 1 and "degree 2" in err


def test_classify_disjoint_pair_incomplete_exit_two(tmp_path, capsys):
    path = tmp_path / "disjoint.txt"
    path.write_text("x^2+y^2-z^2\nx^2+y^2-2*z^2\n")
    code, out, err = run_cli(capsys, "classify", str(path), "--json")
    assert code == 2 and "incomplete" in err
    doc = json.loads(out)
    assert doc["survey"]["records"] == []
    assert doc["survey"]["residual_per_pair"] == {"0,1": 4}


def test_classify_assume_qh_and_points_file(tmp_path, capsys):
    points = tmp_path / "points.txt"
    points.write_text("1:1:1\n# comment\n-1:1:1\n")
    code, out, _ = run_cli(
        capsys,
        "classify",
        "corpus:pencil_four_points_m5",
        "--json",
        "--assume-qh",
        "--points",
        str(points),
    )
    assert code == 0
    doc = json.loads(out)
    assert all(rec["tau"] == 16 for rec in doc["survey"]["records"])


def test_theorems_commands(capsys):
    code, out, _ = run_cli(capsys, "theorems", "near", "--kmax", "30", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True and doc["counterexamples"] == []

    code, out, _ = run_cli(capsys, "theorems", "char", "--kmax", "20", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["admissible_k"] == [2, 3, 4]
    assert doc["intervals"]["5"] == [5, 4] and doc["intervals"]["6"] == [6, 5]

    code, out, _ = run_cli(capsys, "theorems", "nfbound", "--kmax", "20", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["admissible_k"] == list(range(2, 9))

    code, _, err = run_cli(capsys, "theorems", "near", "--kmax", "20000")
    assert code == 1 and "capped" in err


def test_deform_check_command(capsys):
    code, out, _ = run_cli(
        capsys,
        "deform-check",
        "corpus:persson_triconical",
        "corpus:persson_deformed",
        "--json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True and doc["conclusion"] == "nearly_free"

    code, out, _ = run_cli(
        capsys,
        "deform-check",
        "corpus:persson_triconical",
        "corpus:persson_triconical",
        "--json",
    )
    assert code == 2
    doc = json.loads(out)
    failed = [c["name"] for c in doc["clauses"] if not c["ok"]]
    assert "inventory" in failed


def test_supersolvable_geometric_and_incidence(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "supersolvable", "corpus:ploski_m3", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["supersolvable"] is True and doc["mode"] == "geometric"

    inc = tmp_path / "inc.txt"
    inc.write_text(
        "point a: components 0,1\npoint b: components 2,3\n"
        "point c: components 0,2\npoint d: components 1,3\n"
        "point e: components 0,3\npoint f: components 1,2\n"
    )
    code, out, _ = run_cli(capsys, "supersolvable", str(inc), "--incidence", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["mode"] == "user-incidence" and doc["supersolvable"] is False

    # incomplete geometric survey refuses to answer
    arr = tmp_path / "disjoint.txt"
    arr.write_text("x^2+y^2-z^2\nx^2+y^2-2*z^2\n")
    code, _, err = run_cli(capsys, "supersolvable", str(arr))
    assert code == 2 and "incomplete" in err


def test_corpus_listing(capsys):
    code, out, _ = run_cli(capsys, "corpus")
    assert code == 0
    assert "corpus:persson_triconical" in out
    assert len(out.strip().splitlines()) == 20


def test_corpus_entry_quasi_homogeneity_honored(capsys):
    # pencil entries assert the base-point hypothesis themselves
    code, out, _ = run_cli(capsys, "classify", "corpus:pencil_four_points_m5", "--json")
    assert code == 0
    doc = json.loads(out)
    assert all(rec["tau"] == 16 for rec in doc["survey"]["records"])


def test_internal_fault_exit_three(capsys, monkeypatch):
    import conicfree.cli as cli_module

    def boom(*args, **kwargs):
        raise RuntimeError("synthetic fault")

    monkeypatch.setattr(cli_module, "analyze_curve", boom)
    code, _, err = run_cli(capsys, "analyze", "x^2+y^2-z^2")
    assert code == 3 and "internal error" in err


def test_regress_subset(capsys):
    code, out, _ = run_cli(capsys, "regress", "two_conics_a7_e2")
    assert code == 0
    assert "FAIL" not in out
