import json
import subprocess
import sys

import pytest

from copos3.cli import (
    EX_CANTCREAT,
    EX_DATAERR,
    EX_MARGINAL,
    EX_NEGATIVE,
    EX_NOINPUT,
    EX_OK,
    EX_USAGE,
    main,
    parse_vary,
    run_scan,
    UsageError,
)
from copos3.z3 import Z3Params

DIAG = {"order": 3, "entries": {"111": 1, "222": 1, "333": 1}}
A123 = {"order": 3, "entries": {"111": 1, "222": 1, "333": 1, "123": -1}}
CROSS10 = {
    "lambda1": 1, "lambda2": 1, "lambda3": 0, "lambda4": 0, "lambdaS": 1,
    "lambdaS1": 0, "lambdaS2": 0, "lambdaS12": 10, "rho": 1,
}


def write(tmp_path, name, obj):
    f = tmp_path / name
    f.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(f)


def run(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


class TestCheck:
    def test_diagonal(self, tmp_path, capsys):
        rc, out, _ = run(capsys, ["check", write(tmp_path, "d.json", DIAG)])
        assert rc == EX_OK and json.loads(out)["status"] == "copositive"

    def test_strict(self, tmp_path, capsys):
        rc, out, _ = run(capsys, ["check", "--strict", write(tmp_path, "d.json", DIAG)])
        assert json.loads(out)["status"] == "strictly_copositive"

    def test_negative_with_oracle(self, tmp_path, capsys):
        rc, out, _ = run(capsys, ["check", "--oracle", "--exit-verdict", write(tmp_path, "a.json", A123)])
        doc = json.loads(out)
        assert rc == EX_NEGATIVE
        assert doc["status"] == "not_copositive"
        assert doc["oracle"]["agrees"] is True
        assert doc["oracle"]["min_value"] == pytest.approx(-1 / 9)

    def test_marginal_exit(self, tmp_path, capsys):
        zero = {"order": 3, "entries": {}}
        rc, out, _ = run(capsys, ["check", "--exit-verdict", write(tmp_path, "z.json", zero)])
        assert json.loads(out)["marginal"] and rc == EX_MARGINAL

    def test_order4(self, tmp_path, capsys):
        t = {"order": 4, "entries": {"1111": 1, "2222": 1, "3333": 1}}
        rc, out, _ = run(capsys, ["check", write(tmp_path, "t.json", t)])
        assert json.loads(out)["order"] == 4


class TestBfb:
    def test_large_cross_coupling(self, tmp_path, capsys):
        rc, out, _ = run(capsys, ["bfb", "--exit-verdict", write(tmp_path, "p.json", CROSS10)])
        doc = json.loads(out)
        assert rc == EX_NEGATIVE
        assert doc["status"] == "not_bfb" and doc["case"] == "b"
        assert len(doc["witness"]) == 3


class TestRoots:
    def test_cubic(self, tmp_path, capsys):
        rc, out, _ = run(capsys, ["roots", write(tmp_path, "p.json", {"coefficients": [-6, 11, -6, 1]})])
        doc = json.loads(out)
        assert [r["value"] for r in doc["roots"]] == pytest.approx([1, 2, 3])


class TestErrors:
    def test_missing_file(self, tmp_path, capsys):
        rc, _, err = run(capsys, ["check", str(tmp_path / "nope.json")])
        assert rc == EX_NOINPUT and "cannot read" in err

    def test_bad_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["check", "--bogus", "x"])
        assert exc.value.code == EX_USAGE

    def test_bad_tolerance(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["check", "--tol", "-1", "x"])
        assert exc.value.code == EX_USAGE

    def test_duplicate_key(self, tmp_path, capsys):
        doc = {"order": 3, "entries": {"132": -1, "123": -1}}
        rc, _, err = run(capsys, ["check", write(tmp_path, "t.json", doc)])
        assert rc == EX_DATAERR and "duplicates" in err

    def test_malformed_json(self, tmp_path, capsys):
        rc, _, err = run(capsys, ["bfb", write(tmp_path, "p.json", "{")])
        assert rc == EX_DATAERR

    def test_bad_vary(self, tmp_path, capsys):
        f = write(tmp_path, "p.json", CROSS10)
        rc, _, _ = run(capsys, ["scan", f, "--vary", "mu=0:1:3", "--out", str(tmp_path / "o.csv")])
        assert rc == EX_USAGE

    def test_unwritable_output(self, tmp_path, capsys):
        f = write(tmp_path, "p.json", CROSS10)
        rc, _, _ = run(capsys, ["scan", f, "--vary", "rho=0:1:3", "--out", str(tmp_path / "no" / "o.csv")])
        assert rc == EX_CANTCREAT


class TestScan:
    def test_parse_vary(self):
        key, grid = parse_vary("lambdaS1=-2:2:41")
        assert key == "lambdaS1" and len(grid) == 41 and grid[20] == 0
        for bad in ("lambdaS1", "lambdaS1=0:1", "lambdaS1=0:1:0", "lambdaS1=0:inf:3"):
            with pytest.raises(UsageError):
                parse_vary(bad)

    def test_rows_and_header(self, tmp_path, capsys):
        f = write(tmp_path, "p.json", CROSS10)
        out = tmp_path / "region.csv"
        rc, msg, _ = run(capsys, ["scan", f, "--vary", "lambdaS1=-2:2:5", "--vary", "lambdaS2=-2:2:4", "--out", str(out)])
        assert rc == EX_OK and json.loads(msg)["rows"] == 20
        lines = out.read_text().splitlines()
        assert lines[0] == "lambdaS1,lambdaS2,status,case,marginal"
        assert len(lines) == 21

    def test_rho_range_checked(self, tmp_path, capsys):
        f = write(tmp_path, "p.json", CROSS10)
        rc, _, _ = run(capsys, ["scan", f, "--vary", "rho=0:2:3", "--out", str(tmp_path / "o.csv")])
        assert rc == EX_DATAERR

    def test_worker_count_does_not_change_output(self):
        base = Z3Params(**CROSS10)
        axes = [parse_vary("lambdaS1=-2:2:9"), parse_vary("lambdaS12=-3:3:7")]
        assert run_scan(base, axes, 1, 1e-9) == run_scan(base, axes, 3, 1e-9)


def test_console_entry_point(tmp_path):
    f = write(tmp_path, "d.json", DIAG)
    r = subprocess.run([sys.executable, "-m", "copos3.cli", "check", f], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["status"] == "copositive"
