import csv
import io
import json

import pytest

from approxstruct.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def family(name, bound, **params):
    return json.dumps({"kind": "family", "name": name, "params": params, "bound": str(bound)})


EMPTY = json.dumps({"kind": "intervals", "intervals": []})


def test_density_csv_squarefree(capsys):
    code, out, _ = run(capsys, "density", "--set", family("squarefree", 10 ** 6), "--kind", "r",
                       "--r", "1", "--start", "1000000", "--count", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and list(rows[0]) == ["horizon", "k", "lo", "hi", "width"]
    assert abs(float(rows[-1]["lo"]) - 0.6079) < 0.001


def test_density_empty_set_is_zero(capsys):
    code, out, _ = run(capsys, "density", "--set", EMPTY, "--kind", "log", "--count", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3 and all(float(r["hi"]) == 0 for r in rows)


def test_density_banach_json(capsys):
    code, out, _ = run(capsys, "density", "--set", family("factorial-blocks", 10 ** 30),
                       "--kind", "banach-r", "--r", "1", "--out", "json", "--count", "5")
    doc = json.loads(out)
    assert code == 0 and float(doc["running_max"]) >= 1


def test_density_config_and_flags(capsys, tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("horizon_start = 100\nhorizon_count = 2\nhorizon_ratio = 10\n")
    code, out, _ = run(capsys, "density", "--set", family("squarefree", 10 ** 4), "--kind", "r",
                       "--r", "1/2", "--config", str(cfg), "--count", "3")
    horizons = [r["horizon"] for r in csv.DictReader(io.StringIO(out))]
    assert code == 0 and horizons == ["100", "1000", "10000"]


def test_find_geometric(capsys):
    code, out, _ = run(capsys, "find", "--set", family("pow2-blocks", "1", delta="2/5"),
                       "--bound", "2^200", "--kind", "geometric", "--l", "5")
    doc = json.loads(out)
    assert code == 0 and len(doc["terms"]) == 5
    for t in doc["terms"]:
        assert int(t["x"]) <= int(t["g"]) < 2 * int(t["x"])


def test_find_power_ap(capsys):
    code, out, _ = run(capsys, "find", "--set", family("mth-power-blocks", 10 ** 6, m=2, delta="9/10"),
                       "--kind", "power-ap", "--l", "4", "--m", "2", "--eps", "1/2")
    assert code == 0 and json.loads(out)["kind"] == "power"


def test_find_not_found(capsys):
    code, out, _ = run(capsys, "find", "--set", EMPTY, "--kind", "geometric", "--l", "3")
    assert code == 1 and json.loads(out)["status"] == "NOT-FOUND"


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--set", family("pow2-blocks", 2 ** 64, delta="2/5"),
                       "--kind", "no-pow2", "--eps", "1/2", "--bound", "2^64", "--delta", "2/5")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "PASS" and doc["side_condition"] is True
    code, out, _ = run(capsys, "verify", "--set", family("mth-power-blocks", 10 ** 6, m=2, delta="1/5"),
                       "--kind", "no-mth-power", "--m", "2", "--eps", "1/2", "--bound", "1000000")
    assert code == 0 and json.loads(out)["status"] == "PASS"
    code, out, _ = run(capsys, "verify", "--set", '{"kind":"explicit","elements":["3"]}',
                       "--kind", "no-pow2", "--eps", "1/2", "--bound", "8")
    doc = json.loads(out)
    assert code == 1 and doc["violation"] == {"k": "2", "g": "4", "x": "3"}


def test_verify_no_3geo(capsys):
    code, out, _ = run(capsys, "verify", "--set", family("sparse-blocks", 10 ** 9, j=2),
                       "--kind", "no-3geo", "--c", "1", "--min-param", "10", "--bound", "1000000000")
    assert code == 0 and json.loads(out)["status"] == "PASS"
    code, out, _ = run(capsys, "verify", "--set", '{"kind":"intervals","intervals":[["1","1000"]]}',
                       "--kind", "no-3geo", "--c", "1", "--bound", "1000")
    assert code == 1


def test_transform_and_gen(capsys):
    code, out, _ = run(capsys, "transform", "--set", '{"kind":"intervals","intervals":[["5","16"]]}',
                       "--kind", "log")
    assert code == 0 and json.loads(out)["intervals"] == [["3", "4"]]
    code, out, _ = run(capsys, "transform", "--set", '{"kind":"intervals","intervals":[["4","9"]]}',
                       "--kind", "power", "--p", "1", "--q", "2")
    assert json.loads(out)["intervals"] == [["2", "3"]]
    code, out, _ = run(capsys, "gen", "--family", "sparse-blocks", "--param", "j=2", "--bound", "10000000")
    assert code == 0 and json.loads(out)["intervals"][-1] == ["2197001", "4394002"]


def test_check_single_suite(capsys):
    code, out, _ = run(capsys, "check", "--suite", "chain")
    assert code == 0 and out.strip().endswith("checks passed")


def test_check_zero_tolerance_can_fail(capsys):
    code, out, _ = run(capsys, "check", "--suite", "chain", "--tolerance", "0")
    assert code in (0, 1) and "checks passed" in out


@pytest.mark.parametrize("argv", [
    ["find", "--set", "{bad", "--kind", "geometric", "--l", "3"],
    ["gen", "--family", "pow2-blocks", "--bound", "100"],
    ["gen", "--family", "squarefree"],
    ["density", "--set", EMPTY, "--kind", "r"],
    ["find", "--set", "/no/such/file.json", "--kind", "geometric", "--l", "3"],
    ["verify", "--set", EMPTY, "--kind", "no-pow2", "--bound", "8"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["density", "--kind", "bogus"])
    assert exc.value.code == 2


def test_budget_exit_3(capsys):
    code, _, err = run(capsys, "find", "--set", '{"kind":"intervals","intervals":[["1","100000000"]]}',
                       "--kind", "power-ap", "--l", "3", "--m", "1", "--eps", "1")
    assert code == 3 and "cap" in err
