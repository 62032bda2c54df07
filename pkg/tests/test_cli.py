import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from groupsemi.cli import main

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = Path(__file__).parent / "golden"
SERIES = ROOT / "data" / "series"
SCHEMA = json.loads((ROOT / "docs" / "output.schema.json").read_text())


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "argv, golden, code",
    [
        (["poly", "goldbach", "x^3+x^2+x+1", "--coeff", "nat", "--group", "z"], "goldbach_nat.txt", 0),
        (["poly", "goldbach", "x^3+x^2+x+1", "--coeff", "nat", "--group", "z", "--json"], "goldbach_nat.json", 0),
        (["poly", "goldbach", "t*x + t", "--coeff", "natpoly"], "goldbach_natpoly_refused.txt", 1),
        (["poly", "goldbach", "t*x + t", "--coeff", "natpoly", "--json"], "goldbach_natpoly_refused.json", 1),
        (["poly", "irred", "2x+2"], "irred_gcd.txt", 0),
        (["series", "goldbach", str(SERIES / "all_twos.json")], "series_all_twos.txt", 0),
    ],
)
def test_golden(argv, golden, code):
    got_code, out, _ = run(*argv)
    assert got_code == code
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "argv",
    [
        ["poly", "goldbach", "x^3+x^2+x+1", "--json"],
        ["poly", "goldbach", "t*x + t", "--coeff", "natpoly", "--json"],
        ["poly", "irred", "x^2+3x+2", "--json"],
        ["poly", "irred", "2x+2", "--json"],
        ["poly", "monolithic", "x^4+x^3+x^2+x+1", "--json"],
        ["poly", "factor", "x^4+2x^3+2x^2+2x+1", "--json"],
        ["poly", "eval", "x^(0,1) + x^(1,0)", "--group", "zvec:2", "--json"],
        ["poly", "mul", "x+1", "x+2", "--json"],
        ["series", "goldbach", str(SERIES / "odd_tail_even.json"), "--json"],
        ["spq", "verify", "--p", "2", "--q", "5", "--kmax", "2", "--bound", "3", "--parts", "4", "--json"],
        ["bench", "exhaustive", "--max-exp", "2", "--max-coeff", "2", "--lex", "5", "--json"],
    ],
)
def test_json_validates_against_schema(argv):
    code, out, _ = run(*argv)
    assert code in (0, 1)
    jsonschema.validate(json.loads(out), SCHEMA)


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["poly", "eval", "x^2 + x + x^2"], "2x^2 + x\n"),
        (["poly", "add", "x+1", "x^2"], "x^2 + x + 1\n"),
        (["poly", "mul", "x+1", "x+2"], "x^2 + 3x + 2\n"),
        (["poly", "mul", "x^(-1)", "x^2+x"], "x + 1\n"),
        (["poly", "irred", "x+1"], "irreducible (monolithic: top-gap-strict; coefficient gcd is a unit)\n"),
        (["poly", "irred", "x^2+3x+2"], "reducible (factors as (x + 1) * (x + 2))\n"),
        (["poly", "monolithic", "x^4+x^3+x^2+x+1"], "monolithic (oracle-exhausted)\n"),
        (["poly", "factor", "x^2+1"], "no factorization into two non-monomial factors\n"),
        (["poly", "eval", "(A^2+3*A*B)*x", "--coeff", "spq:2,5"], "(A^2+3*A*B)*x\n"),
    ],
)
def test_text_output(argv, expected):
    code, out, _ = run(*argv)
    assert code == 0
    assert out == expected


@pytest.mark.parametrize(
    "argv, code",
    [
        (["poly", "irred", "2x+"], 2),
        (["poly", "bogus", "x"], 2),
        (["poly", "eval", "x", "--coeff", "reals"], 2),
        (["poly", "eval", "x", "--group", "q"], 2),
        (["poly", "eval", "x", "--frobnicate"], 2),
        (["poly", "irred", "x+1", "x+2"], 2),
        (["poly", "irred", "x^3"], 1),
        (["poly", "goldbach", "5x"], 1),
        (["poly", "factor", "x + A", "--coeff", "spq:2,5"], 1),
        (["poly", "factor", "24x^4+24x^3+24x^2+24x+24", "--limit", "10"], 3),
        (["series", "goldbach", "/nonexistent.json"], 2),
        (["spq", "verify", "--p", "2", "--q", "3"], 1),
        ([], 2),
    ],
)
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_parse_error_names_position():
    _, _, err = run("poly", "eval", "2x + y")
    assert "position 5" in err


def test_series_commands():
    code, out, _ = run("series", "goldbach", str(SERIES / "odd_tail_even.json"))
    assert code == 0
    assert out.count("sampled to depth 256: ok") == 2
    code, out, _ = run("series", "goldbach", str(SERIES / "odd_tail.json"), "--no-shortcut", "--depth", "32")
    assert code == 0 and "p'' = 3 + 3x" in out
    code, out, _ = run("series", "goldbach", str(SERIES / "unit_increasing.json"))
    assert code == 0 and out.count("certificate") == 1


def test_spq_verify_table():
    code, out, _ = run("spq", "verify", "--p", "2", "--q", "7", "--kmax", "4", "--bound", "4", "--parts", "6")
    assert code == 0
    assert "positive control: B splits" in out and "anomalies: 0" in out


def test_bench_small():
    code, out, _ = run("bench", "exhaustive", "--max-exp", "3", "--max-coeff", "2", "--lex", "20")
    assert code == 0
    assert "failures                    0" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["poly", "goldbach", "2x^4+2x^3+2x^2+2x+2", "--json"],
        ["series", "goldbach", "data/series/all_twos.json", "--json"],
        ["spq", "verify", "--p", "3", "--q", "5", "--kmax", "2", "--bound", "3", "--parts", "4"],
    ],
)
def test_subprocess_runs_are_byte_identical(argv):
    cmd = [sys.executable, "-m", "groupsemi", *argv]
    first = subprocess.run(cmd, capture_output=True, cwd=ROOT, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, cwd=ROOT, check=True).stdout
    assert first == second and first.endswith(b"\n")


@pytest.mark.parametrize(
    "argv",
    [
        ["poly", "irred", "--coeff", "natpoly", "(t+1)*x + t"],
        ["poly", "--coeff", "natpoly", "irred", "(t+1)*x + t"],
        ["poly", "irred", "(t+1)*x + t", "--coeff", "natpoly"],
    ],
)
def test_option_placement(argv):
    code, out, _ = run(*argv)
    assert code == 0
    assert out.startswith("irreducible")
