import subprocess
import sys
from pathlib import Path

import pytest

from mpres.cli import run

DATA = Path(__file__).parent / "data"
CZ, EDGE, SINGLE, BROKEN = (str(DATA / n) for n in
                            ("cz.mfil", "edge.mfil", "single.mfil", "broken.mfil"))


def test_decompose_cz():
    code, out, _ = run(["decompose", CZ, "-n", "0"])
    assert code == 0
    assert out == "C_0 = <1> (+) <x y, x^3, y^2> (+) <y, x^2>\n"
    code, out, _ = run(["decompose", CZ])
    assert out.splitlines()[1:] == ["C_1 = <x^2> (+) <y^2, x^2 y> (+) <x y^2, x^3>",
                                    "C_2 = <x^3 y^2>"]


def test_resolve_cz_h1():
    code, out, _ = run(["resolve", CZ, "--target", "homology", "-n", "1", "--minimize"])
    assert code == 0
    assert out.splitlines()[0] == "0 -> R(-3,-2)^2 -> R(-2,-2)(+)R(-3,-1) -> 0"


def test_validate():
    code, out, _ = run(["validate", CZ])
    assert code == 0 and out.startswith("ok\tr=2\tsimplices=7")
    code, out, err = run(["validate", BROKEN])
    assert code == 2 and "simplex 2" in err and out == ""


def test_validate_strict(tmp_path):
    p = tmp_path / "a.mfil"
    p.write_text("r 2\nsimplex 0 : 0 @ (0,0) (1,1)\n")
    assert run(["validate", str(p)])[0] == 0
    assert run(["validate", "--strict", str(p)])[0] == 2


def test_usage_errors(capsys):
    assert run(["frobnicate"])[0] == 2
    assert run(["decompose", CZ, "--bogus"])[0] == 2
    assert run(["--field", "fp:4", "decompose", CZ])[0] == 2
    assert run(["decompose", "/nonexistent.mfil"])[0] == 2
    assert "usage" in capsys.readouterr().err


def test_slice():
    code, out, _ = run(["slice", EDGE, "--at", "1,0"])
    assert code == 0 and out == "0\t0\n1\t1\n2\t0 1\n"
    assert run(["slice", EDGE, "--at", "1,0,0"])[0] == 2


def test_syzygies_edge():
    code, out, _ = run(["syzygies", EDGE, "-n", "1"])
    lines = out.splitlines()
    assert lines[0] == "n\tsimplex\ta\tb\tc\tbinomial"
    assert lines[1] == "1\t2\t(1,0)\t(0,1)\t(1,1)\ty*(2,(1,0)) - x*(2,(0,1))"


def test_hilbert_and_betti():
    code, out, _ = run(["hilbert", EDGE, "--module", "homology", "-n", "0"])
    assert out == "degree\tdim\n(0,0)\t2\n(0,1)\t1\n(1,0)\t1\n(1,1)\t1\n"
    code, out, _ = run(["betti", CZ, "-n", "1"])
    assert out == "step\tdegree\tcount\n0\t(2,2)\t1\n0\t(3,1)\t1\n1\t(3,2)\t2\n"


def test_chains_lists_generators():
    code, out, _ = run(["chains", EDGE])
    assert code == 0
    assert "C_1\n2\t(1,0)\n2\t(0,1)\nd_1" in out


@pytest.mark.parametrize("target,n", [("homology", 0), ("homology", 1), ("homology", 2),
                                      ("chains", 1), ("cycles", 1), ("boundaries", 0),
                                      ("boundaries", 1)])
def test_resolve_verify_pipeline(tmp_path, target, n):
    code, out, _ = run(["resolve", CZ, "--target", target, "-n", str(n)])
    assert code == 0
    p = tmp_path / "r.res"
    p.write_text(out)
    code, out, _ = run(["verify", CZ, str(p)])
    assert code == 0 and out.startswith("PASS")


def test_verify_reports_failure(tmp_path):
    _, out, _ = run(["resolve", CZ, "--target", "homology", "-n", "1", "--minimize"])
    # drop the second relation column: exactness fails at (3,2)
    bad = out.replace("0 1 1\n1 1 -1\n", "")
    p = tmp_path / "bad.res"
    p.write_text(bad)
    code, out, _ = run(["verify", CZ, str(p)])
    assert code == 1 and out.startswith("FAIL at step")


def test_verify_malformed(tmp_path):
    p = tmp_path / "junk.res"
    p.write_text("nothing here\n")
    assert run(["verify", CZ, str(p)])[0] == 2


def test_field_option():
    code, out, _ = run(["--field", "fp:2", "resolve", CZ, "-n", "1", "--minimize"])
    assert code == 0 and "field fp:2" in out


def test_onecrit():
    code, out, _ = run(["onecrit", str(DATA / "edge_ls.lsc")])
    assert code == 0
    assert "H_0 betti\nstep\tdegree\tcount\n0\t(0,1)\t1\n0\t(1,0)\t1\n1\t(1,1)\t1" in out
    assert run(["onecrit", EDGE])[0] == 2
    code, out, _ = run(["onecrit", SINGLE])
    assert code == 0 and "equal_to_C\ttrue" in out


def test_generate():
    code, out, _ = run(["generate", "lower-star", str(DATA / "edge_values.txt")])
    assert code == 0
    assert out.splitlines()[-1] == "simplex 2 : 0 1 @ (1,1)"
    a = run(["generate", "random", "--seed", "4", "--r", "3"])
    assert a == run(["generate", "random", "--seed", "4", "--r", "3"])
    assert run(["generate", "lower-star"])[0] == 2


def test_determinism():
    argv = ["resolve", CZ, "--target", "homology", "-n", "0"]
    assert run(argv) == run(argv)


def test_console_entry_point():
    p = subprocess.run([sys.executable, "-m", "mpres", "decompose", CZ, "-n", "2"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == "C_2 = <x^3 y^2>\n"
