import json
import subprocess
import sys

import pytest

from hammingperc.cli import main, parse_range, UsageError


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("0..4") == [0, 1, 2, 3, 4]
    assert parse_range("1,3..4") == [1, 3, 4]
    assert parse_range(None) is None
    with pytest.raises(UsageError):
        parse_range("4..1")
    with pytest.raises(UsageError):
        parse_range("x")


def test_formula_rows(capsys):
    code, out, _ = run(["formula", "--n", "3", "--d", "2", "--r", "0..4"], capsys)
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "# hammingperc 0.1.0" and lines[1].startswith("# config ")
    rows = lines[3:]
    assert len(rows) == 5
    assert all(row.split(",")[9] == "True" for row in rows)
    assert rows[3].split(",")[3] == "10"


def test_formula_single_and_out_of_range(capsys):
    code, out, _ = run(["formula", "--n", "2", "--d", "3", "--r", "2", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["rows"][0]["me_nested"] == 5
    code, out, _ = run(["formula", "--n", "3", "--d", "2", "--r", "9", "--format", "json"], capsys)
    row = json.loads(out)["rows"][0]
    assert row["me_nested"] == 18 and row["note"] == "r exceeds (n-1)d; |E| returned"


def test_usage_errors(capsys):
    assert run(["formula", "--n", "1", "--d", "2"], capsys)[0] == 2
    assert run(["formula", "--n", "3"], capsys)[0] == 2
    assert run(["formula", "--n", "3", "--d", "x"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nope"])
    assert exc.value.code == 2


def test_construct_simulate_roundtrip(tmp_path, capsys):
    for mode, (n, d, r) in (("edge", (3, 2, 3)), ("vertex", (3, 4, 2)), ("vertex", (2, 4, 4))):
        seed = tmp_path / f"{mode}{n}{d}{r}.json"
        c_code, _, _ = run(["construct", "--n", str(n), "--d", str(d), "--r", str(r), "--mode", mode,
                            "--out", str(seed)], capsys)
        s_code, out, _ = run(["simulate", "--seed-file", str(seed)], capsys)
        trace = json.loads(out)
        assert c_code == s_code
        assert trace["percolated"] == json.loads(seed.read_text())["percolated"]
        assert trace["mode"] == mode


def test_simulate_exit_codes(tmp_path, capsys):
    assert run(["simulate", "--n", "3", "--d", "2", "--r", "2"], capsys)[0] == 1
    code, out, _ = run(["simulate", "--n", "3", "--d", "2", "--r", "2", "--full"], capsys)
    assert code == 0 and json.loads(out)["rounds"] == []
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["simulate", "--seed-file", str(bad)], capsys)[0] == 2
    assert run(["simulate", "--n", "2", "--d", "2", "--r", "1", "--seed", "99"], capsys)[0] == 2


def test_simulate_graph_file(tmp_path, capsys):
    g = tmp_path / "c4.txt"
    g.write_text("p 4 4\ne 0 1\ne 1 2\ne 2 3\ne 0 3\n")
    code, out, _ = run(["simulate", "--graph", str(g), "--r", "1", "--seed", "0", "--mode", "vertex"], capsys)
    assert code == 0 and json.loads(out)["n_or_file"] == str(g)
    code, out, _ = run(["search", "--graph", str(g), "--r", "2", "--vertex"], capsys)
    assert code == 0 and json.loads(out)["optimum"] == 2


def test_certify_search_identities(capsys):
    code, out, _ = run(["certify", "--n", "2", "--d", "2", "--r", "1"], capsys)
    assert code == 0 and out.splitlines()[-1].endswith(",equal")
    code, out, _ = run(["search", "--edge", "--n", "2", "--d", "2", "--r", "1"], capsys)
    assert code == 0 and json.loads(out)["optimum"] == 1
    code, out, _ = run(["search", "--edge", "--n", "3", "--d", "2", "--r", "3", "--budget-nodes", "10"], capsys)
    assert code == 3
    code, out, _ = run(["verify-identities"], capsys)
    assert code == 0 and "False" not in out


def test_certify_jobs_preserve_order(capsys):
    _, serial, _ = run(["certify", "--n", "2..3", "--d", "1..2"], capsys)
    _, pooled, _ = run(["certify", "--n", "2..3", "--d", "1..2", "--jobs", "2"], capsys)
    assert serial.splitlines()[2:] == pooled.splitlines()[2:]


def test_deterministic_output(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"t{i}.csv"
        main(["table", "--n", "2..3", "--d", "0..3", "--out", str(path), "--svg", str(tmp_path / f"t{i}.svg")])
        outs.append(path.read_bytes())
    # the config line records the output path; everything else must match byte for byte
    a, b = (o.split(b"\n") for o in outs)
    assert a[0] == b[0] and a[2:] == b[2:]
    assert (tmp_path / "t0.svg").read_text().startswith("<svg")


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "hammingperc.cli", "formula", "--n", "3", "--d", "2", "--r", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and ",10," in res.stdout
