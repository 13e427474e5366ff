import csv
import io
import json
import subprocess
import sys

import pytest

from museq.cli import main, parse_int_list, InputError
from museq.core import MuSequence, dump_sequence, load_sequence


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_int_list():
    assert parse_int_list("5") == [5]
    assert parse_int_list("2,3,7") == [2, 3, 7]
    assert parse_int_list("2..5,9") == [2, 3, 4, 5, 9]
    with pytest.raises(InputError):
        parse_int_list("a..b")


def test_build_mu2(capsys, tmp_path):
    path = tmp_path / "s.json"
    code, out, _ = run(capsys, "build", "--mu", 2, "--dim", 8, "--out", path)
    assert code == 0
    seq, certified = load_sequence(path)
    assert seq.terms == (1,) * 9 and certified
    rows = rows_of(out)
    assert len(rows) == 8 and all(r["minimum"] == "2" for r in rows)
    # A_8: det 9, min 2, center density 1 / (16 * 3)
    assert float(rows[-1]["delta"]) == pytest.approx(1 / 48, rel=1e-9)
    assert float(rows[-1]["Delta"]) == pytest.approx(3.14159265358979 ** 4 / 24 / 48, rel=1e-9)


def test_build_mu3_and_mu4(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "--mu", 3, "--dim", 10, "--out", tmp_path / "a.json")
    assert code == 0
    assert load_sequence(tmp_path / "a.json")[0].terms == tuple(range(1, 12))
    code, out, _ = run(capsys, "build", "--mu", 4, "--dim", 3)
    assert [r["s_n"] for r in rows_of(out)] == ["2", "4", "7"]
    assert list(rows_of(out)[0]) == ["n", "s_n", "f", "bound_first", "bound_second", "sigma_tilde",
                                     "minimum", "determinant", "delta", "Delta"]


def test_build_report_file_and_json(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "--mu", 5, "--dim", 4, "--report", tmp_path / "r.csv")
    assert code == 0 and out == ""
    assert len(rows_of((tmp_path / "r.csv").read_text())) == 4
    code, out, _ = run(capsys, "build", "--mu", 5, "--dim", 4, "--format", "json")
    assert [r["n"] for r in json.loads(out)] == [1, 2, 3, 4]


def test_build_interval(capsys):
    code, out, _ = run(capsys, "build", "--mu", 3, "--dim", 5, "--strategy", "interval", "--sigma", "0.5", "--eps", "1")
    assert code == 0 and len(rows_of(out)) == 5
    code, _, err = run(capsys, "build", "--mu", 4, "--dim", 3, "--strategy", "interval",
                       "--sigma", "0.0001", "--eps", "0")
    assert code == 2 and "construction failed" in err
    assert run(capsys, "build", "--mu", 4, "--dim", 3, "--strategy", "interval", "--sigma", "-1")[0] == 4


def test_round_trip(capsys, tmp_path):
    path = tmp_path / "s.json"
    assert run(capsys, "build", "--mu", 7, "--dim", 6, "--out", path)[0] == 0
    code, out, err = run(capsys, "verify", path)
    assert code == 0 and err.strip() == "PASS"
    assert all(r["status"] == "PASS" for r in rows_of(out))


def test_verify_examples(capsys, tmp_path):
    p = tmp_path / "a.json"
    dump_sequence(MuSequence(3, (1, 2, 3, 4)), p)
    code, out, _ = run(capsys, "verify", p)
    assert code == 0
    assert [r["minimum"] for r in rows_of(out)] == ["-", "5", "3", "3"]

    dump_sequence(MuSequence(4, (1, 2, 3)), p)
    code, out, err = run(capsys, "verify", p)
    assert code == 2
    assert "FAIL at prefix (1, 2, 3)" in err and "(1, 1, -1)" in err
    assert rows_of(out)[-1]["witness"] == "1 1 -1"

    dump_sequence(MuSequence(2, (1,)), p)
    code, out, _ = run(capsys, "verify", p, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "PASS" and len(doc["prefixes"]) == 1


def test_verify_input_errors(capsys, tmp_path):
    assert run(capsys, "verify", tmp_path / "missing.json")[0] == 4
    bad = tmp_path / "bad.json"
    bad.write_text('{"mu": "3", "terms": ["2", "1"]}')
    assert run(capsys, "verify", bad)[0] == 4
    bad.write_text("not json")
    assert run(capsys, "verify", bad)[0] == 4


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--mu", "2..5", "--dim", 6)
    rows = rows_of(out)
    assert code == 0 and len(rows) == 24
    assert all(r["status"] == "OK" for r in rows)
    assert all(float(r["sigma_tilde"]) > 0 for r in rows)


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--dims", "2..8")
    rows = rows_of(out)
    assert code == 0 and len(rows) == 7
    assert list(rows[0]) == ["n", "V_n", "corollary", "mh", "ball", "mainB_over_2n"]
    assert float(rows[0]["mh"]) == pytest.approx(0.8224670334, rel=1e-9)
    assert run(capsys, "bounds", "--dims", 1)[0] == 4


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--dim", 2, "--mu", 1)
    assert code == 0
    assert out.splitlines() == ["n,mu,count,bound,status", "2,1,5,9.4248,OK"]
    assert run(capsys, "count", "--dim", 12, "--mu", 40, "--enum-budget", 100)[0] == 3


def test_approx(capsys, tmp_path):
    g = tmp_path / "a2.txt"
    g.write_text("2\n2 1\n1 2\n")
    code, out, _ = run(capsys, "approx", "--gram", g, "--kappas", "10,20,40")
    rows = rows_of(out)
    assert code == 0 and len(rows) == 3
    errors = [float(r["error"]) for r in rows]
    assert errors == sorted(errors, reverse=True) and errors[0] == 0.1
    assert rows[0]["s"] == "1 14 161"
    g.write_text("2\n1 2\n2 1\n")
    assert run(capsys, "approx", "--gram", g, "--kappas", "10")[0] == 4
    assert run(capsys, "approx", "--gram", tmp_path / "none.txt", "--kappas", "10")[0] == 4


def test_bad_arguments(capsys):
    assert run(capsys, "build", "--mu", "x", "--dim", 3)[0] == 4
    assert run(capsys, "build", "--mu", "2,3", "--dim", 3)[0] == 4
    assert run(capsys, "build", "--mu", 1, "--dim", 3)[0] == 4
    assert run(capsys, "frobnicate")[0] == 4
    assert run(capsys, "build", "--mu", 9, "--dim", 8, "--enum-budget", 100)[0] == 3


def test_deterministic_output(capsys):
    a = run(capsys, "table", "--mu", "2..4", "--dim", 5)[1]
    b = run(capsys, "table", "--mu", "2..4", "--dim", 5)[1]
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "museq.cli", "count", "--dim", "1", "--mu", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "1,4,5,8.2462,OK"
