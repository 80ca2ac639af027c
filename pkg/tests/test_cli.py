import json
import subprocess
import sys
from pathlib import Path

import pytest

from selmer_stability.cli import main

ROOT = Path(__file__).resolve().parents[1]
CONFIG = str(ROOT / "configs" / "11a1_p7.cfg")
INLINE = ["--p", "7", "--conductor", "11", "--curve", "0,-1,1,-10,-20"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_density(capsys):
    code, out, _ = run(capsys, "density", "--p", "5")
    assert code == 0
    assert out.splitlines() == [
        "p,group_order,matching_count,fraction_num,fraction_den,closed_form_num,closed_form_den,match",
        "5,480,60,1,8,1,8,true",
    ]
    code, out, _ = run(capsys, "density", "--p", "7", "--out", "json")
    assert json.loads(out)[0]["matching_count"] == 224


def test_sieve_and_csv_file(capsys, tmp_path):
    target = tmp_path / "sieve.csv"
    code, _, err = run(capsys, "sieve", "--spec", CONFIG, "--bound", "10", "--csv", str(target))
    assert code == 0 and "omega primes <= 10: 1" in err
    assert target.read_text().splitlines()[3] == "5,InOmega,,1"


def test_census_inline_spec(capsys):
    code, out, _ = run(capsys, "census", *INLINE, "--max", "1e4", "--checkpoints", "100,1e3,1e4")
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()]
    assert rows[0] == ["Y", "M_omega", "ratio"]
    assert rows[-1][0] == "10000" and len(rows[-1][2].split(".")[1]) == 6


def test_levels(capsys):
    code, out, err = run(capsys, "levels", "--spec", CONFIG, "--max", "60")
    assert code == 0 and "n(rho; 60) = 2" in err
    assert "55,Admissible,5^1:C1" in out


def test_beta(capsys):
    code, out, _ = run(capsys, "beta", "--p", "7", "--ell", "5", "--sigma=-5,0,0,-1", "--tau", "1,7,0,1")
    assert code == 0 and "beta_bound: 0" in out and "divisors: 1,Divisible" in out


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "--spec", CONFIG, "--level", "143")
    assert code == 0 and "not certified" in out and "13 = -1 (mod 7)" in out


def test_ledger(capsys, tmp_path):
    path = tmp_path / "l.txt"
    path.write_text("p=7\nlocal.7=2,0\nlocal.inf=0,1\n")
    code, out, _ = run(capsys, "ledger", "--input", str(path))
    assert code == 0 and out.splitlines()[0] == "wiles: 1"


def test_report(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, _, _ = run(capsys, "report", "--config", CONFIG, "--output", str(target))
    assert code == 0
    assert json.loads(target.read_text())["nf_lower_bound"] == 2


@pytest.mark.parametrize(
    "body, code",
    [
        ("p=4\nconductor=11\ncurve=0,-1,1,-10,-20\nmax_level=110\n", 2),
        ("p=7\nconductor=13\ncurve=0,-1,1,-10,-20\nmax_level=130\n", 4),
        ("p=7\nconductor=11\ntrace_table=t.csv\nmax_level=110\n", 3),
    ],
)
def test_exit_codes(capsys, tmp_path, body, code):
    (tmp_path / "t.csv").write_text("# p=7\n2,5\n")
    (tmp_path / "c.cfg").write_text(body)
    assert run(capsys, "report", "--config", str(tmp_path / "c.cfg"))[0] == code


def test_missing_spec_is_config_error(capsys):
    assert run(capsys, "levels", "--max", "10")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "selmer_stability", "density", "--p", "5"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.splitlines()[1] == "5,480,60,1,8,1,8,true"
