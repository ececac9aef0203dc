import subprocess
import sys

import pytest

from drsa.cli import main


def run(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "drsa.cli", *args], input=stdin,
                          capture_output=True, text=True)


@pytest.fixture
def files(tmp_path):
    inst = tmp_path / "two.drsa"
    inst.write_text("DRSA 1\nt 2 0 1\nt 0 2 1\n")
    bad = tmp_path / "bad.drsa"
    bad.write_text("DRSA 1\nt 2 0 1\nt 0 2 2\n")
    cnf = tmp_path / "one.cnf"
    cnf.write_text("p cnf 1 1\n1 -1 0\n")
    return tmp_path, inst, bad, cnf


def test_exit_codes(files, capsys):
    tmp, inst, bad, _ = files
    assert main(["--quiet", "feasible", str(inst)]) == 0
    assert main(["feasible", str(bad)]) == 2
    assert main(["solve", str(bad)]) == 2
    assert main(["solve", str(tmp / "missing.drsa")]) == 1
    big = tmp / "big.drsa"
    big.write_text("DRSA 1\n" + "".join(f"t {i} {7 - i} 3\n" for i in range(8)))
    assert main(["solve", str(big), "--budget", "5"]) == 3
    capsys.readouterr()


def test_solve_verify_render(files, capsys):
    tmp, inst, _, _ = files
    sol = tmp / "two.sol"
    assert main(["--quiet", "solve", str(inst), "--oracle", "-o", str(sol)]) == 0
    assert main(["verify", str(inst), str(sol)]) == 0
    assert "ok" in capsys.readouterr().out.lower()
    svg = tmp / "two.svg"
    assert main(["render", str(inst), str(sol), "-o", str(svg)]) == 0
    assert svg.read_text().startswith("<?xml")


def test_reduce_and_realize(files, capsys):
    tmp, _, _, cnf = files
    out, grid = tmp / "one.drsa", tmp / "one.json"
    assert main(["--quiet", "reduce", str(cnf), "--alpha", "50", "--variable-depth", "auto",
                 "-o", str(out), "--grid", str(grid)]) == 0
    assert main(["feasible", str(out)]) == 0
    sol = tmp / "one.sol"
    assert main(["--quiet", "realize", "--grid", str(grid), "--assign", "1", "-o", str(sol)]) == 0
    assert main(["verify", str(out), str(sol)]) == 0
    assert main(["realize", "--grid", str(grid), "--assign", "10"]) == 1
    assert main(["reduce", str(cnf)]) == 1  # default alpha is below the minimum
    capsys.readouterr()


def test_gadgets_table(capsys):
    assert main(["gadgets", "--kind", "connection-h", "--alpha", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split("\t") == ["kind", "case", "inputs", "outputs", "dp", "lemma", "delta"]
    assert lines[1].split("\t")[4:] == ["18", "18", "0"]
    assert main(["gadgets", "--kind", "nope"]) == 1


def test_byte_identical_runs(files):
    tmp, inst, _, cnf = files
    a = run("solve", str(inst), "--quiet").stdout
    assert a and a == run("solve", str(inst), "--quiet").stdout
    g1 = run("--jobs", "1", "gadgets", "--alpha", "3").stdout
    g4 = run("--jobs", "4", "gadgets", "--alpha", "3").stdout
    assert g1 and g1 == g4
