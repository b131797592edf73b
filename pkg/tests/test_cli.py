import contextlib
import io
import subprocess
import sys

import pytest

from conftest import FIXTURES
from sftcross import cli


def run(*args):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main([str(a) for a in args])
    return code, out.getvalue(), err.getvalue()


def fx(name):
    return FIXTURES / f"{name}.json"


def test_analyze_reducible():
    code, out, _ = run("analyze", fx("red"))
    assert code == 0
    assert "verdict: not topologically free; witness cylinder [1] for (n,m)=(1,0); predecessor-closed {0}" in out
    assert "agrees" in out


def test_analyze_free():
    code, out, _ = run("analyze", fx("golden"), "--depth", "4")
    assert code == 0 and "verdict: topologically free" in out


def test_measure():
    code, out, _ = run("measure", fx("golden"))
    assert code == 0 and "m[0] = 3/5" in out and "m[1] = 2/5" in out
    code, out, _ = run("measure", fx("full2"))
    assert "m[0] = 1/2" in out and "fiber weights: uniform" in out


@pytest.mark.parametrize("name", ["full2", "golden", "perm3", "red"])
def test_verify_all(name):
    code, out, _ = run("verify", fx(name), "--suite", "all", "--seed", "7", "--depth", "3")
    assert code == 0, out
    assert out.rstrip().endswith("verify: PASS")


def test_verify_single_suite_deterministic():
    a = run("verify", fx("golden"), "--suite", "gns", "--seed", "3")
    b = run("verify", fx("golden"), "--suite", "gns", "--seed", "3")
    assert a == b and a[0] == 0


def test_eval_ops():
    assert run("eval", fx("full2"), "--expr", "S*S'", "--expr", "1", "--op", "equals")[:2] == (1, "false\n")
    assert run("eval", fx("perm3"), "--expr", "S*S'", "--expr", "1", "--op", "equals")[:2] == (0, "true\n")
    code, out, _ = run("eval", fx("full2"), "--expr", "S*S'", "--op", "G")
    assert out == "1/2\n"
    code, out, _ = run("eval", fx("full2"), "--expr", "S*S'", "--op", "normal-form")
    assert out.startswith("degree 0: N=1 M=1 r=1") and out.count(": 1\n") == 8
    code, out, _ = run("eval", fx("golden"), "--expr", "S'", "--expr", "f*S", "--op", "product")
    assert out == "(3/2*[0] + [1])\n"
    code, out, _ = run("eval", fx("golden"), "--expr", "f*S + S*S'", "--op", "F")
    assert out == "S*S'\n"
    code, out, _ = run("eval", fx("golden"), "--expr", "f*S", "--op", "adjoint")
    assert out == "S'*([0] + 2*[1])\n"


def test_quotient():
    code, out, _ = run("quotient", fx("red"), "--keep", "0")
    assert code == 0 and "kernel witness: 1_[1] -> 0" in out and "20/20" in out
    code, _, err = run("quotient", fx("red"), "--keep", "1")
    assert code == 2 and "predecessor-closed" in err


def test_grandeh():
    code, out, _ = run("grandeh", fx("golden"), "--point", ":01", "--n", "1", "--m", "0")
    assert code == 0 and "h = 1_[0,1]" in out
    code, _, err = run("grandeh", fx("full2"), "--point", ":0", "--n", "1", "--m", "0")
    assert code == 2 and "s^1 x0 = s^0 x0" in err
    code, _, err = run("grandeh", fx("full2"), "--point", ":000001", "--n", "1", "--m", "0", "--depth", "2")
    assert code == 1 and "depth 2" in err


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "missing.json"],
        ["eval", str(FIXTURES / "full2.json"), "--expr", "S*", "--op", "F"],
        ["eval", str(FIXTURES / "full2.json"), "--expr", "S", "--op", "equals"],
        ["verify", str(FIXTURES / "full2.json"), "--suite", "bogus"],
        ["grandeh", str(FIXTURES / "golden.json"), "--point", ":11", "--n", "1", "--m", "0"],
    ],
)
def test_input_errors(args):
    assert run(*args)[0] == 2


def test_module_entry_point_is_byte_identical():
    cmd = [sys.executable, "-m", "sftcross", "verify", str(fx("full2")), "--suite", "redundancy", "--seed", "5"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True, env={"PYTHONHASHSEED": "123", "PATH": ""})
    assert a.returncode == 0 and a.stdout == b.stdout
