import io
import subprocess
import sys

import pytest

from multigerm.cli import run

from conftest import GERMS

BIG = str(GERMS / "bigerm.germ")
LINES = str(GERMS / "three_lines.germ")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def rows(text):
    return dict(line.split("=", 1) for line in text.splitlines())


def test_target_m4_is_the_maximal_ideal():
    code, out, _ = call("target-mk", BIG, "--k", "4", "--format", "structured")
    r = rows(out)
    assert code == 0
    assert r["M4"] == "<T, X, Y, Z>"
    assert r["M4.colength"] == "1"
    assert r["status"] == "ok"
    assert r["command"] == "target-mk" and r["seed"] == "0" and r["order"] == "local"


def test_output_is_byte_identical_across_runs():
    argv = ("invariants", "m1", BIG, "--matrix", "M", "--seed", "4")
    first, second = call(*argv), call(*argv)
    assert first == second and first[0] == 0


def test_text_format_aligns_values():
    code, out, _ = call("fitting", BIG, "--k", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("command") and lines[-1].split() == ["status", "ok"]
    starts = {len(line) - len(line.split(None, 1)[1]) for line in lines}
    assert len(starts) == 1


@pytest.mark.parametrize("what", ["expansion", "triple-formula", "decomposition", "preimage", "double-formula"])
def test_verify_bigerm(what):
    code, out, _ = call("verify", what, BIG, "--format", "structured")
    assert code == 0, out
    assert "false" not in out and "FAIL" not in out


def test_double_formula_failure_is_a_diagnostic():
    code, out, _ = call("verify", "double-formula", LINES, "--format", "structured")
    r = rows(out)
    assert code == 1
    assert r["equal"] == "false" and r["status"] == "fail"
    assert r["formula"] == "<X, Y>"
    assert "FAIL" in out


def test_invariants_from_file():
    get = lambda *a: rows(call("invariants", *a, "--format", "structured")[1])
    assert get("m0", BIG, "--matrix", "M")["m0"].startswith("3 ")
    assert get("intersection", BIG, "--ideal", "C", "--ideal", "D")["intersection"] == "1"
    assert get("delta", BIG, "--matrix", "M", "--r", "1")["delta"].startswith("2 ")
    q = get("quadruple", BIG)
    assert (q["Q"], q["colengths"], q["integral"]) == ("1", "3 1", "yes")


def test_source_dk_reports_each_point():
    code, out, _ = call("source-dk", BIG, "--k", "3", "--format", "structured")
    r = rows(out)
    assert code == 0
    assert r["D2_3.f1.colength"] == "3" and r["D2_3.f2.colength"] == "1"


@pytest.mark.parametrize(
    "argv",
    [
        ("fitting", "/nonexistent/file.germ", "--k", "1"),
        ("fitting", BIG),
        ("invariants", "m0", BIG, "--ideal", "nope"),
        ("invariants", "intersection", BIG, "--ideal", "C"),
    ],
)
def test_input_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and err.startswith("input error")


def test_empty_file_exits_2(tmp_path):
    p = tmp_path / "empty.germ"
    p.write_text("")
    code, _, err = call("present", str(p))
    assert code == 2 and "empty input" in err


def test_bad_polynomial_reports_position(tmp_path):
    p = tmp_path / "bad.germ"
    p.write_text("target X Y;\nbranch a source u : u, u^^2;\n")
    code, _, err = call("present", str(p))
    assert code == 2 and "line 2" in err


def test_unsupported_branch_is_a_diagnostic(tmp_path):
    p = tmp_path / "cone.germ"
    p.write_text("target X Y Z;\nbranch c source u v : u^2, u*v, v^2;\n")
    code, out, _ = call("present", str(p))
    assert code == 1 and "diagnostic" in out


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "multigerm", "target-mk", BIG, "--k", "5", "--format", "structured"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert res.returncode == 0
    assert "M5.dimension=-1" in res.stdout
