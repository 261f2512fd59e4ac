import csv
import io
import json

import pytest

from stfib.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,expected", [
    (("seq", "--kind", "pell", "--n", "10"), "0,1,2,5,12,29,70,169,408,985"),
    (("seq", "--kind", "mersenne", "--n", "7"), "0,1,3,7,15,31,63"),
    (("seq", "--kind", "fibonacci", "--n", "8", "--which", "lucas"), "2,1,3,4,7,11,18,29"),
    (("seq", "--kind", "pq_numbers", "--n", "5", "--p", "3", "--q", "2"), "0,1,5,19,65"),
    (("poly", "--which", "fib", "--n", "6"), "s^5 + 4s^3t + 3st^2"),
    (("poly", "--which", "lucas", "--n", "5"), "s^5 + 5s^3t + 5st^2"),
])
def test_text_outputs(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_binom_triangle(capsys):
    code, out, _ = run(capsys, "binom", "--n", "8")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 9
    assert lines[3] == "3: 1 | s^2 + t | s^2 + t | 1"
    code, out, _ = run(capsys, "binom", "--n", "4", "--s", "1", "--t", "1")
    assert out.splitlines()[4] == "4: 1 | 3 | 6 | 3 | 1"


def test_catalan_table(capsys):
    code, out, _ = run(capsys, "catalan", "--n", "8")
    assert code == 0 and out.splitlines()[2] == "2: s^2 + 2t"
    code, out, _ = run(capsys, "catalan", "--n", "6", "--s", "2", "--t", "-1", "--format", "csv")
    rows = [r for r in csv.reader(io.StringIO(out)) if not r[0].startswith("#")]
    assert [r[1] for r in rows[1:]] == ["1", "1", "2", "5", "14", "42", "132"]
    assert out.startswith("# s=2/1 t=-1/1")


def test_series_table(capsys):
    code, out, _ = run(capsys, "series", "--gf", "catalan", "--N", "12", "--s", "3", "--t", "-2", "--v", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# ") and "double precision" in lines[0]
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    assert len(rows) == 13 and max(float(r["rel_err"]) for r in rows) <= 1e-8


def test_csv_and_json_agree(capsys):
    base = ("series", "--gf", "recip_sqrt", "--N", "6", "--s", "1", "--t", "-0.21", "--v", "0.21")
    _, out_csv, _ = run(capsys, *base)
    _, out_json, _ = run(capsys, *base, "--format", "json")
    rows = list(csv.reader(io.StringIO(out_csv)))[2:]
    obj = json.loads(out_json)
    assert [[float(x) for x in r] for r in rows] == [[float(x) for x in r] for r in obj["rows"]]
    for argv in (("seq", "--kind", "jacobsthal", "--n", "9"), ("catalan", "--n", "4")):
        _, c, _ = run(capsys, *argv, "--format", "csv")
        _, j, _ = run(capsys, *argv, "--format", "json")
        csv_values = [r[-1] for r in csv.reader(io.StringIO(c))][1:]
        json_values = json.loads(j)["values"]
        assert csv_values == json_values


def test_power_series(capsys):
    code, out, _ = run(capsys, "series", "--power", "1/2", "--N", "3", "--s", "3", "--t", "-2",
                       "--v", "2", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["rows"][1][1] == pytest.approx(0.414213562, rel=1e-9)


def test_verify(capsys):
    code, out, err = run(capsys, "verify", "--suite", "pascal", "--n", "10")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and rows and all(r["pass"] for r in rows)
    assert set(rows[0]) == {"identity", "params", "N", "residual", "pass"}
    assert "45/45" in err


def test_verify_failure_exit_code(capsys, monkeypatch):
    import stfib.cli as cli
    monkeypatch.setattr(cli, "run_suite", lambda name, n: [
        {"identity": "x", "params": {}, "N": None, "residual": 1.0, "pass": False}])
    code, _, err = run(capsys, "verify", "--suite", "fib")
    assert code == 1 and "0/1" in err


@pytest.mark.parametrize("argv", [
    ("binom", "--n", "3", "--s", "0", "--t", "1"),
    ("binom", "--n", "3", "--s", "1", "--t", "0"),
    ("series", "--gf", "sqrt", "--N", "4", "--s", "nan", "--t", "-2", "--v", "1"),
    ("series", "--gf", "sqrt", "--N", "4", "--s", "3", "--t", "-inf", "--v", "1"),
    ("series", "--gf", "sqrt", "--N", "4", "--s", "3", "--t", "abc", "--v", "1"),
    ("seq", "--kind", "unknown", "--n", "3"),
    ("seq", "--kind", "pell", "--n", "-1"),
    ("verify", "--suite", "nope"),
    (),
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    assert exc.value.code == 2
    assert capsys.readouterr().err


def test_runtime_usage_errors(capsys):
    code, _, err = run(capsys, "seq", "--kind", "pq_numbers", "--n", "3")
    assert code == 2 and "parameters" in err
    code, _, err = run(capsys, "binom", "--n", "3", "--s", "1")
    assert code == 2 and err
    code, _, err = run(capsys, "series", "--power", "x/2", "--N", "3", "--s", "3", "--t", "-2", "--v", "2")
    assert code == 2 and err


def test_out_file(tmp_path, capsys):
    target = tmp_path / "pell.txt"
    assert main(["seq", "--kind", "pell", "--n", "4", "--out", str(target)]) == 0
    assert target.read_text() == "0,1,2,5\n" and capsys.readouterr().out == ""


def test_deterministic(capsys):
    argv = ("series", "--gf", "n_catalan", "--N", "8", "--s", "3", "--t", "-2", "--v", "1")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
