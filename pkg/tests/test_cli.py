import hashlib
import json
import subprocess
import sys

import pytest

from seqentropy.cli import main
from seqentropy.words import read_sequence


def test_generate_residues_stdout(capsys):
    assert main(["generate", "residues", "--q", "19"]) == 0
    out, err = capsys.readouterr()
    assert out == "r=2 N=18\n100111101010000110\n"
    assert err.strip() == f"N=18 sha256={hashlib.sha256(out.encode()).hexdigest()}"


def test_generate_file_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.seq", tmp_path / "b.seq"
    for path in (a, b):
        assert main(["generate", "cramer", "--N", "1e5", "--seed", "11", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == lines[1]
    assert lines[0].endswith(hashlib.sha256(a.read_bytes()).hexdigest())
    assert read_sequence(a).N == 10**5


def test_profile_csv_from_file(tmp_path, capsys):
    path = tmp_path / "p.seq"
    main(["generate", "periodic", "--pattern", "001", "--N", "10000", "--out", str(path)])
    capsys.readouterr()
    assert main(["profile", "--in", str(path), "--n-max", "8"]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == "n,windows,distinct,local_value,info_value,reliable"
    assert len([l for l in lines if not l.startswith("#")]) == 9
    assert any(l.startswith("# h_loc lower=") for l in lines)


def test_profile_json(capsys):
    assert main(["profile", "champernowne", "--N", "20000", "--n-max", "10", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["profile"]["reliability_cutoff"] == 7
    assert d["estimates"]["h_loc"]["n_window"] == [5, 7]


def test_profile_insufficient_data(capsys):
    assert main(["profile", "periodic", "--pattern", "01", "--N", "200", "--n-max", "4"]) == 0
    assert "# h_loc error=" in capsys.readouterr().out


def test_check_exit_codes(tmp_path, capsys):
    assert main(["check", "discontinuity"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["check"] == "discontinuity" and d["summary"]["passed"]
    out = tmp_path / "r.json"
    assert main(["check", "perturbation-lemma", "--case", "b", "--C", "2",
                 "--N-list", "1024,1073741824", "--out", str(out)]) == 1
    assert json.loads(out.read_text())["summary"]["n_fail"] >= 1


def test_check_boundary_warning(capsys):
    assert main(["check", "residue-equidistribution", "--q", "1009", "--n-max", "3"]) == 0
    err = capsys.readouterr().err
    assert err.count("warning: boundary hit") == 2


def test_check_rare_ones_default_primes(capsys):
    assert main(["check", "rare-ones", "--N", "100000"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["inputs"]["label"] == "primes"


def test_check_cramer_empirical_seed_range(capsys):
    assert main(["check", "cramer-empirical", "--N", "5000", "--n-max", "3", "--seeds", "0-29"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["inputs"]["seeds"] == list(range(30))


def test_series_csv(capsys):
    assert main(["series", "--q", "1009,10007", "--n-max", "12"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("q,length,reliability_cutoff")
    assert lines[1].startswith("1009,1008,3,")


@pytest.mark.parametrize("argv", [
    ["generate", "bernoulli", "--N", "10"],
    ["generate", "residues", "--q", "21"],
    ["generate", "periodic", "--N", "10"],
    ["profile", "--n-max", "3"],
    ["check", "hloc-le-hinfo"],
    ["generate", "markov", "--matrix", "01,00", "--N", "10"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "seqentropy.cli", "generate", "residues", "--q", "7"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "r=2 N=6\n110100\n"
