import json

import pytest

from qpcc.cli import EXIT_INVALID, EXIT_OK, EXIT_UNDEFINED, EXIT_VIOLATION, SWEEP_HEADER, fmt, main

WERNER_11 = """\
p,r_value,sum_pauli,pcc1,pcc2,pcc3,mutual_information,negativity
0,0,0,0,0,0,0,0
0.1,0.3,0.3,0.1,-0.1,0.1,0.0204141894821,0
0.2,0.6,0.6,0.2,-0.2,0.2,0.0780719051126,0
0.3,0.9,0.9,0.3,-0.3,0.3,0.169698808079,0
0.4,1.2,1.2,0.4,-0.4,0.4,0.293992420688,0.05
0.5,1.5,1.5,0.5,-0.5,0.5,0.451205059305,0.125
0.6,1.8,1.8,0.6,-0.6,0.6,0.643220350553,0.2
0.7,2.1,2.1,0.7,-0.7,0.7,0.874190608325,0.275
0.8,2.4,2.4,0.8,-0.8,0.8,1.15241532018,0.35
0.9,2.7,2.7,0.9,-0.9,0.9,1.49681626832,0.425
1,3,3,1,-1,1,2,0.5
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def analyze(capsys, spec):
    code, out, _ = run(capsys, "analyze", json.dumps(spec))
    assert code == EXIT_OK
    return json.loads(out)


def test_fmt():
    assert fmt(0.0) == "0"
    assert fmt(float("nan")) == "NA"
    assert fmt(1 / 3) == "0.333333333333"


def test_analyze_werner_third(capsys):
    rep = analyze(capsys, {"family": "werner", "p": 1 / 3})
    assert rep["schema"] == 1
    assert rep["r_value"] == pytest.approx(1, abs=1e-6)
    assert rep["sum_pauli"] == pytest.approx(1, abs=1e-9)
    assert rep["mutual_information"] == pytest.approx(0.20751874963942218, abs=1e-9)
    assert rep["classification"] == "quantum-certified"
    assert rep["v"] == 3


def test_analyze_bell_and_maximally_mixed(capsys):
    rep = analyze(capsys, {"family": "bell"})
    assert rep["r_value"] == pytest.approx(3, abs=1e-6)
    assert rep["negativity"] == pytest.approx(0.5, abs=1e-9)
    m = [[[0.25 if i == j else 0.0, 0.0] for j in range(4)] for i in range(4)]
    rep = analyze(capsys, {"dim": 4, "matrix": m})
    assert rep["r_value"] == 0 and rep["classification"] == "uncorrelated"


def test_analyze_csv_and_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO('{"family": "horodecki", "p": 0.5}'))
    code, out, _ = run(capsys, "analyze", "-", "--format", "csv")
    assert code == EXIT_OK
    header, row = out.strip().splitlines()
    values = dict(zip(header.split(","), row.split(",")))
    assert float(values["r_value"]) == pytest.approx(2, abs=1e-6)


def test_analyze_from_file(capsys, tmp_path):
    p = tmp_path / "state.json"
    p.write_text('{"family": "standard_form", "t": [0.5, 0, 0]}')
    code, out, _ = run(capsys, "analyze", str(p))
    assert code == EXIT_OK
    assert json.loads(out)["classification"] == "classical-compatible"


@pytest.mark.parametrize(
    "spec",
    [
        "not json",
        '{"family": "werner"}',
        '{"family": "werner", "p": 1.5}',
        '{"family": "standard_form", "t": [1, 1, 1]}',
        '{"family": "nope"}',
        '{"dim": 4, "matrix": [[[1, 0]]]}',
        '{"dim": 2, "matrix": [[[1, 0], [1, 0]], [[0, 0], [0, 0]]]}',
    ],
)
def test_analyze_invalid_input(capsys, spec):
    code, _, err = run(capsys, "analyze", spec)
    assert code == EXIT_INVALID
    assert err.startswith("error:")


def test_analyze_pure_product_is_undefined(capsys):
    code, _, err = run(capsys, "analyze", '{"family": "horodecki", "p": 0}')
    assert code == EXIT_UNDEFINED
    assert "not applicable" in err


def test_sweep_golden(capsys):
    code, out, _ = run(capsys, "sweep", "werner", "--steps", "11")
    assert code == EXIT_OK
    assert out == WERNER_11


def test_sweep_byte_stable(capsys):
    outs = [run(capsys, "sweep", "horodecki", "--steps", "6")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    assert outs[0].splitlines()[0] == SWEEP_HEADER
    assert outs[0].splitlines()[1].startswith("0.01,")


def test_sweep_horodecki_zero_row(capsys):
    code, out, _ = run(capsys, "sweep", "horodecki", "--p-min", "0", "--p-max", "0.5", "--steps", "2")
    assert code == EXIT_OK
    assert out.splitlines()[1] == "0,NA,NA,0,0,NA,0,0"


def test_sweep_json_and_out_file(capsys, tmp_path):
    path = tmp_path / "sweep.json"
    code, out, _ = run(capsys, "sweep", "werner", "--steps", "3", "--format", "json", "--out", str(path))
    assert code == EXIT_OK and out == ""
    data = json.loads(path.read_text())
    assert [r["r_value"] for r in data["rows"]] == pytest.approx([0, 1.5, 3], abs=1e-9)


@pytest.mark.parametrize(
    "argv",
    [
        ("--p-min", "0.8", "--p-max", "0.2"),
        ("--p-max", "1.5"),
        ("--steps", "0"),
        ("--restarts", "-1"),
    ],
)
def test_sweep_bad_ranges(capsys, argv):
    assert run(capsys, "sweep", "werner", *argv)[0] == EXIT_INVALID


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "theorem2", "--n", "10")
    assert code == EXIT_OK
    assert out.strip().endswith("ALL PASS")
    code, out, _ = run(capsys, "verify", "uncertainty", "--n", "20", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["ok"] is True


def test_verify_reports_violation(capsys, monkeypatch):
    from qpcc import verify

    monkeypatch.setattr(verify, "UNCERTAINTY_TOL", -1.0)
    code, out, _ = run(capsys, "verify", "uncertainty", "--n", "3")
    assert code == EXIT_VIOLATION
    assert "FAIL" in out and "counterexample" in out


def test_verify_bad_n(capsys):
    assert run(capsys, "verify", "bounds", "--n", "0")[0] == EXIT_INVALID
