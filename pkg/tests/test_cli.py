import json
import subprocess
import sys

import pytest

from besselineq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def value_of(out):
    return float(out.split()[0].split("=")[1])


@pytest.mark.parametrize(
    "argv,expected",
    [
        (("--func", "K", "--nu", "0.5", "--x", "1"), 0.4610685044),
        (("--func", "I", "--nu", "0", "--x", "0"), 1.0),
        (("--func", "L", "--nu", "0.5", "--x", "1"), 0.4333156538),
        (("--func", "gamma", "--x", "0.5"), 1.7724538509),
    ],
)
def test_eval(capsys, argv, expected):
    code, out, _ = run(capsys, "eval", *argv)
    assert code == 0
    assert value_of(out) == pytest.approx(expected, abs=1e-10)
    assert "status=ok" in out


def test_eval_scaled(capsys):
    code, out, _ = run(capsys, "eval", "--func", "I", "--nu", "0", "--x", "100", "--scaled")
    assert code == 0 and value_of(out) == pytest.approx(0.0399443, abs=1e-7)


def test_eval_out_of_domain(capsys):
    code, out, _ = run(capsys, "eval", "--func", "K", "--nu", "0.5", "--x", "-1")
    assert code == 2 and "out_of_domain" in out


def test_eval_bad_input(capsys):
    assert run(capsys, "eval", "--func", "Q", "--nu", "0", "--x", "1")[0] == 2
    assert run(capsys, "eval", "--func", "I", "--nu", "abc", "--x", "1")[0] == 2
    assert run(capsys, "eval", "--func", "I", "--x", "1")[0] == 2


def test_integral(capsys):
    code, out, _ = run(capsys, "integral", "--family", "lower_i", "--nu", "0.5", "--power", "1.5", "--x", "1")
    assert code == 0 and value_of(out) == pytest.approx(0.2935253264, abs=1e-10)
    code, out, _ = run(capsys, "integral", "--family", "full_line_k", "--nu", "0.5", "--beta", "0.6")
    assert value_of(out) == pytest.approx(3.9166, abs=1e-4)
    code, out, _ = run(capsys, "integral", "--family", "lower_i", "--nu", "0", "--gamma", "0.5", "--power", "0", "--x", "2")
    code2, out2, _ = run(capsys, "integral", "--family", "lower_i", "--nu", "0", "--beta", "-0.5", "--power", "0", "--x", "2")
    assert out == out2
    assert run(capsys, "integral", "--family", "upper_k", "--nu", "0", "--beta", "1", "--x", "1")[0] == 2
    assert run(capsys, "integral", "--nu", "0", "--beta", "0.1", "--gamma", "0.1", "--x", "1")[0] == 2


def test_verify_filter(capsys):
    code, out, _ = run(capsys, "verify", "--case", "lowerk2.upper", "--nu", "2", "--beta", "0.3")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "id,nu,beta,n,x,lhs,rhs,rel_margin"
    assert len(rows) == 26 and all(r.startswith("lowerk2.upper,2.0,0.3,") for r in rows[1:])


def test_verify_json_and_out(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--case", "besi22,nasell", "--nu", "0,1", "--x", "0.5,5", "--n", "0",
                     "--format", "json", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert {d["id"] for d in data} == {"besi22", "nasell"} and len(data) == 8


def test_verify_tiny_tolerance_reports_equality_noise(capsys):
    code, _, err = run(capsys, "verify", "--case", "lowerk", "--nu", "0.5", "--beta", "0.3", "--tol", "1e-18")
    assert code == 1 and "violation lowerk" in err


def test_verify_errors(capsys):
    assert run(capsys, "verify", "--case", "nope")[0] == 2
    assert run(capsys, "verify", "--tol", "-1")[0] == 2
    assert run(capsys, "verify", "--case", "besi22", "--x", "1,a")[0] == 2
    assert run(capsys, "verify", "--case", "besi22", "--out", "/nonexistent/dir/x.csv")[0] == 3


def test_sharp(capsys):
    code, out, _ = run(capsys, "sharp", "--const", "a", "--nu", "0")
    d = json.loads(out)
    assert code == 0 and 0.23 <= d["value"] <= 0.27 and d["argmin_x"] == "limit x->inf"
    d = json.loads(run(capsys, "sharp", "--const", "b", "--nu", "0")[1])
    assert 0.70 <= d["value"] <= 0.80
    d = json.loads(run(capsys, "sharp", "--const", "sup", "--expr", "open3", "--nu", "0", "--beta", "-0.5")[1])
    assert d["value"] > 0 and d["argmin_x"] > 0
    assert run(capsys, "sharp", "--const", "a", "--nu", "-1")[0] == 2
    assert run(capsys, "sharp", "--const", "sup", "--nu", "0")[0] == 2


def test_tables(capsys, tmp_path):
    code, out, _ = run(capsys, "tables", "--which", "1", "--format", "csv")
    assert code == 0 and len(out.strip().splitlines()) == 43
    code, out, err = run(capsys, "tables", "--which", "2", "--compare")
    assert code == 0 and "abs_diff" in out.splitlines()[0]
    diffs = [float(r.split(",")[-1]) for r in out.strip().splitlines()[1:]]
    assert max(diffs) <= 5e-4
    code, out, _ = run(capsys, "tables", "--which", "1,2", "--format", "json")
    assert set(json.loads(out)) == {"T1", "T2"}
    assert run(capsys, "tables", "--which", "3")[0] == 2


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# settings\nfunc = K\nnu = 0.5\nx = 1\n")
    code, out, _ = run(capsys, "eval", "--config", str(cfg))
    assert code == 0 and value_of(out) == pytest.approx(0.4610685044, abs=1e-10)
    code, out, _ = run(capsys, "eval", "--config", str(cfg), "--func", "I")
    assert value_of(out) == pytest.approx(0.9376748883, abs=1e-10)
    # defaults fill what neither gives
    cfg.write_text("which = 1\n")
    code, out, _ = run(capsys, "tables", "--config", str(cfg))
    assert len(out.strip().splitlines()) == 43


def test_config_errors(tmp_path, capsys):
    assert run(capsys, "eval", "--config", str(tmp_path / "missing"))[0] == 3
    bad = tmp_path / "bad.cfg"
    bad.write_text("just words\n")
    assert run(capsys, "eval", "--config", str(bad))[0] == 2


def test_deterministic_csv(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"t{k}.csv"
        subprocess.run(
            [sys.executable, "-m", "besselineq", "verify", "--case", "besi22,dob11.lower", "--nu", "1,2",
             "--x", "0.5,5", "--n", "0", "--out", str(path)],
            check=True, capture_output=True,
        )
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and b"\r\n" not in outs[0]
