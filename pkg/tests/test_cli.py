import subprocess
import sys

import pytest

from modgal import build_cp2_example, build_dk, build_mho, field_create, group_cyclic
from modgal.algfile import format_algebra, parse_algebra_file
from modgal.cli import main, run_command
from modgal.errors import ActionError, ParseError

C2_FILE = "field GF(2)\nvars Y\ngroup cyclic:2\naction g1: Y -> Y + 1\n"


def write(tmp_path, name, text):
    f = tmp_path / name
    f.write_text(text)
    return str(f)


def run(*argv):
    return run_command([str(a) for a in argv])


# --- algebra files -------------------------------------------------------------

def test_parse_minimal_file():
    A = parse_algebra_file(C2_FILE)
    assert A.ring.vars == ("Y",) and A.gen_maps[0].image("Y") == A.ring.parse("Y + 1")


def test_parse_comments_and_order():
    A = parse_algebra_file("# c2\nfield GF(3)\nvars x y  # two\norder lex\n"
                           "group cyclic:9\naction g1: x -> x + y^2 ; y -> y - 1\n")
    assert A.ring.order == "lex" and A.group.order == 9


def test_parse_order_mismatch():
    with pytest.raises(ActionError) as e:
        parse_algebra_file(C2_FILE.replace("cyclic:2", "cyclic:3"))
    assert e.value.triple is not None


def test_parse_errors_carry_locations():
    with pytest.raises(ParseError) as e:
        parse_algebra_file(C2_FILE.replace("Y -> Y + 1", "Q -> Y + 1"))
    assert e.value.line == 4
    with pytest.raises(ParseError) as e:
        parse_algebra_file(C2_FILE.replace("Y + 1", "Y + * 1"))
    assert (e.value.line, e.value.col) == (4, 21)
    with pytest.raises(ParseError) as e:
        parse_algebra_file("field GF(2)\nvars Y\n")
    with pytest.raises(ParseError):
        parse_algebra_file("field GF(2)\nfrobnicate\n")


@pytest.mark.parametrize("A", [
    build_dk(field_create(2), group_cyclic(2, 2)).base, build_mho(field_create(3, 2), 3, 2).base,
    build_cp2_example(field_create(3)),
], ids=["dk", "mho", "cp2"])
def test_round_trip(A):
    B = parse_algebra_file(format_algebra(A))
    assert B.same_action(A)
    assert format_algebra(B) == format_algebra(A)


# --- subcommands ---------------------------------------------------------------

def test_build_dk_c2():
    r = run("build", "dk", "--field", "GF(2)", "--group", "cyclic:2")
    assert r.exit_code == 0
    assert r.report == "field GF(2)\nvars x@1\ngroup cyclic:2^1\naction g1: x@1 -> x@1 + 1\n"


def test_build_all_kinds_round_trip(tmp_path):
    for argv in [("dk", "--field", "GF(3)", "--group", "elemab:3^2"), ("mho", "--field", "GF(4)", "--rank", 2),
                 ("balpha", "--field", "GF(4)", "--alphas", "1,t"), ("cp2", "--field", "GF(3)")]:
        r = run("build", *argv)
        assert r.exit_code == 0
        f = write(tmp_path, "a.alg", r.report)
        again = run("tensor", f, f)
        assert again.exit_code == 0


def test_build_balpha_dependent_is_input_error():
    r = run("build", "balpha", "--field", "GF(2)", "--alphas", "1,1")
    assert r.exit_code == 2 and "error" in r.diagnostics


def test_invariants_brute(tmp_path):
    f = write(tmp_path, "m.alg", run("build", "mho", "--field", "GF(2)", "--rank", 1).report)
    r = run("invariants", "brute", "--deg", 2, f)
    assert r.exit_code == 0 and r.report == "INV 0 1\nINV 2 Y^2 + Y\n"


def test_invariants_eliminate(tmp_path):
    f = write(tmp_path, "m.alg", run("build", "mho", "--field", "GF(2)", "--rank", 1).report)
    r = run("invariants", "eliminate", f)
    assert r.exit_code == 0
    assert r.report.splitlines() == ["INV 2 Y^2 + Y", "EXPR Y^2 + Y = v1^2 + u1 + v1",
                                     "VERIFIED degree<=2 agrees"]


def test_check_action_corrupt(tmp_path):
    f = write(tmp_path, "bad.alg", C2_FILE.replace("cyclic:2", "cyclic:3"))
    r = run("check", "action", f)
    assert r.exit_code == 1 and r.report.startswith("FAILS Y ")
    assert run("check", "action", write(tmp_path, "ok.alg", C2_FILE)).report == "HOLDS\n"
    r = run("find-point", f)
    assert r.exit_code == 2 and "variable Y" in r.diagnostics


def test_check_subcommands(tmp_path):
    cp2 = write(tmp_path, "c.alg", run("build", "cp2", "--field", "GF(2)").report)
    assert run("check", "triangular", cp2, "--order", "y,x").report == "HOLDS order y,x\n"
    assert run("check", "triangular", cp2, "--order", "x,y").exit_code == 1
    assert run("check", "triangular", cp2, "--all-orders").exit_code == 0
    assert run("check", "invariant", cp2, "--poly", "y^4 + y").exit_code == 0
    assert run("check", "invariant", cp2, "--poly", "x").exit_code == 1
    f = write(tmp_path, "m.alg", C2_FILE)
    assert run("check", "invariant", f, "--poly", "Y^2 + Y").report == "HOLDS\n"
    r = run("check", "invariant", f, "--poly", "Y")
    assert (r.exit_code, r.report) == (1, "FAILS g Y + 1\n")
    dk = write(tmp_path, "d.alg", run("build", "dk", "--field", "GF(2)", "--group", "cyclic:2").report)
    assert run("check", "reflexive", dk, "--point", "x@1 + 1").exit_code == 0
    assert run("check", "reflexive", dk, "--point", "x@1^2").exit_code == 1
    assert run("check", "reflexive", dk, "--point", "x@1^2 + x@1").exit_code == 2


def test_trace_and_find_point(tmp_path):
    cp2 = write(tmp_path, "c.alg", run("build", "cp2", "--field", "GF(2)").report)
    assert run("trace", cp2, "--poly", "x*y").report == "1\n"
    assert run("find-point", cp2).report == "POINT x*y\n"
    r = run("find-point", cp2, "--deg", 1)
    assert (r.exit_code, r.report) == (1, "UNKNOWN no point of degree <= 1\n")


def test_erase(tmp_path):
    f = write(tmp_path, "m.alg", run("build", "mho", "--field", "GF(2)", "--rank", 1).report)
    r = run("erase", f, f)
    assert r.report.splitlines() == ["POINT Y1", "LAMBDA Y2 Y1 + Y2 + 1", "REWRITE Y2 = Y1 + L1 + 1"]


def test_moore():
    assert run("moore", "det", "--field", "GF(4)", "--alphas", "1,t").report == "1\nINDEPENDENT\n"
    assert run("moore", "det", "--field", "GF(4)", "--alphas", "t,t").report == "0\nDEPENDENT\n"
    assert run("moore", "inverse", "--field", "GF(4)", "--alphas", "1,t").report == "f1 t+1 t\nf2 1 1\n"
    assert run("moore", "inverse", "--field", "GF(4)", "--alphas", "1,1").exit_code == 2


def test_map_subcommands(tmp_path):
    r = run("map", "theta", "--field", "GF(4)", "--alphas", "1,t")
    assert r.report == "Z -> Y1 + t*Y2\nEQUIVARIANT yes\n"
    r = run("map", "psi", "--field", "GF(4)", "--alphas", "1,t")
    assert r.report == "Y1 -> t*Z^2 + (t+1)*Z\nY2 -> Z^2 + Z\nEQUIVARIANT yes\n"
    r = run("map", "L", "--field", "GF(4)", "--alphas", "1,t", "--betas", "t,t+1")
    assert r.report == "Z -> (t+1)*Z\nEQUIVARIANT yes\n"
    dk = write(tmp_path, "d.alg", run("build", "dk", "--field", "GF(2)", "--group", "cyclic:4").report)
    cp2 = write(tmp_path, "c.alg", run("build", "cp2", "--field", "GF(2)").report)
    r = run("map", "from-point", dk, cp2, "--point", "x*y")
    assert r.exit_code == 0 and r.report.endswith("EQUIVARIANT yes\n") and len(r.report.splitlines()) == 4
    assert run("map", "from-point", dk, "--point", "x").exit_code == 2


def test_free_points(tmp_path):
    f = write(tmp_path, "m.alg", C2_FILE)
    r = run("free-points", f)
    assert r.exit_code == 0 and r.report.splitlines()[-1] == "FREE"
    triv = write(tmp_path, "t.alg", "field GF(2)\nvars Y\ngroup cyclic:2\naction g1:\n")
    r = run("free-points", triv, "--tower", 1)
    assert r.exit_code == 1 and "WITNESS (0) g" in r.report and r.report.endswith("NOT-FREE\n")
    dk = write(tmp_path, "d.alg", run("build", "dk", "--field", "GF(3)", "--group", "elemab:3^2").report)
    r = run("free-points", dk, "--tower", 1, "--cap", 10, "--no-fallback")
    assert r.exit_code == 1 and r.report.endswith("PARTIAL\n")


def test_usage_errors(tmp_path):
    assert run().exit_code == 2
    assert run("bogus").exit_code == 2
    assert run("find-point").exit_code == 2
    assert run("find-point", tmp_path / "missing.alg").exit_code == 2
    assert run("build", "dk", "--field", "GF(2)").exit_code == 2
    assert run("build", "dk", "--field", "GF(6)", "--group", "cyclic:2").exit_code == 2
    assert run("--help").exit_code == 0


def test_deterministic_output(tmp_path):
    dk = write(tmp_path, "d.alg", run("build", "dk", "--field", "GF(2)", "--group", "elemab:2^2").report)
    outs = {run("invariants", "brute", dk, "--deg", 2).report for _ in range(3)}
    assert len(outs) == 1


def test_main_writes_streams(capsys):
    assert main(["moore", "det", "--field", "GF(2)", "--alphas", "1"]) == 0
    out, err = capsys.readouterr()
    assert out == "1\nINDEPENDENT\n" and err == ""
    assert main(["bogus"]) == 2
    assert "usage error" in capsys.readouterr().err


def test_console_entry_point():
    p = subprocess.run([sys.executable, "-m", "modgal", "moore", "det", "--field", "GF(2)", "--alphas", "1"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == "1\nINDEPENDENT\n"
