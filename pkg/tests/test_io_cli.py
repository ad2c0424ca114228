import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pqrswalk import io
from pqrswalk.cli import run

finite = st.floats(allow_nan=False, allow_infinity=False)


@given(st.lists(finite, min_size=1, max_size=6))
def test_json_roundtrip_is_exact(values):
    doc = {"values": values, "n": len(values), "nested": {"x": values[0]}}
    back = io.loads(io.dumps(doc))
    assert back["values"] == values
    assert back["nested"]["x"] == values[0]
    assert back["n"] == len(values)


@given(st.lists(st.tuples(st.integers(-50, 50), finite, finite), max_size=10))
def test_csv_roundtrip_is_exact(rows):
    header, back = io.read_csv(io.csv_text(("k", "x", "y"), rows))
    assert header == ["k", "x", "y"]
    assert back == [[float(v) for v in r] for r in rows]


def test_fmt():
    assert io.fmt(0.1) == "0.10000000000000001"
    assert io.fmt(3) == "3"
    assert io.fmt(True) == "true"
    assert io.fmt(math.nan) == "null"


def run_cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_evolve_csv(capsys):
    code, out, _ = run_cli(capsys, "evolve", "--type", "a", "--coin", "hadamard", "--state", "R", "--steps", "100", "--format", "csv")
    assert code == 0
    header, rows = io.read_csv(out)
    assert header == list(io.DIST_HEADER)
    assert len(rows) == 101
    assert [r[0] for r in rows] == sorted(r[0] for r in rows)
    assert abs(math.fsum(r[1] for r in rows) - 1) < 1e-9


def test_evolve_json(capsys):
    code, out, _ = run_cli(capsys, "evolve", "--steps", "3", "--state", "sym", "--type", "g", "--format", "json")
    doc = io.loads(out)
    assert code == 0
    assert doc["time"] == 3 and doc["walk_type"] == "G"
    assert len(doc["entries"]) == 4


def test_output_is_deterministic(capsys, tmp_path):
    argv = ["evolve", "--steps", "40", "--coin", "gudder:0.3", "--state", "raw:0.6,0,0,0.8"]
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.csv"
        assert run([*argv, "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_moments_and_symmetry(capsys):
    code, out, _ = run_cli(capsys, "moments", "--steps", "20", "--coin", "gudder:0.6", "--state", "L", "--type", "g")
    assert code == 0
    for entry in io.loads(out)["moments"]:
        assert entry["residual"] < 1e-8
    code, out, _ = run_cli(capsys, "symmetry", "--state", "sym")
    doc = io.loads(out)
    assert code == 0 and doc["balanced"] is True
    assert doc["max_mirror_residual"] < 1e-12


def test_density_and_limit_stats(capsys):
    code, out, _ = run_cli(capsys, "density", "--grid=-0.8:0.8:9", "--state", "R")
    header, rows = io.read_csv(out)
    assert code == 0 and header == ["x", "f"] and len(rows) == 9
    assert rows[0][1] == 0 and rows[4][1] > 0
    code, out, _ = run_cli(capsys, "limit-stats", "--state", "R")
    doc = io.loads(out)
    assert doc["mean"] == pytest.approx(1 - 1 / math.sqrt(2))
    assert doc["sd"] == pytest.approx(0.4550898605622273)


def test_absorb_finite_with_series(capsys, tmp_path):
    series_path = tmp_path / "series.csv"
    code, out, _ = run_cli(capsys, "absorb", "--mode", "finite", "--N", "4", "--k", "1", "--emit-series", str(series_path))
    doc = io.loads(out)
    assert code == 0
    assert doc["prob"] == pytest.approx(0.7, abs=1e-12)
    assert doc["closed_form"] == pytest.approx(0.7, abs=1e-9)
    assert doc["conjecture_rhs"] == pytest.approx(0.7, abs=1e-15)
    header, rows = io.read_csv(series_path.read_text())
    assert header == list(io.SERIES_HEADER)
    assert math.fsum(r[1] for r in rows) == pytest.approx(doc["prob"], abs=1e-15)


def test_absorb_semi_unconverged_exits_3(capsys):
    code, out, err = run_cli(capsys, "absorb", "--mode", "semi", "--n-cap", "3000")
    assert code == 3
    assert io.loads(out)["converged"] is False
    assert "did not converge" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["evolve", "--steps", "3", "--coin", "raw:1,0,0,0,0,0,1,1"],
        ["evolve", "--steps", "3", "--state", "up"],
        ["evolve", "--steps", "3", "--type", "x"],
        ["evolve"],
        ["absorb", "--mode", "finite"],
        ["absorb", "--mode", "finite", "--N", "3", "--k", "3"],
        ["density", "--grid", "1:0:5"],
        ["limit-stats", "--coin", "raw:1,0,0,0,0,0,1,0"],
        ["moments", "--steps", "5", "--m", "0"],
        ["bogus"],
    ],
)
def test_bad_input_exits_2(capsys, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


def test_verify_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "verify", "conjecture", "--n-max", "6")
    assert code == 0
    assert out.count("[PASS]") == 6


def test_failed_verify_exits_1(capsys, monkeypatch):
    from pqrswalk import verify

    monkeypatch.setitem(verify.SUITES, "pqrs", lambda n_max=None: [verify.Check("forced", False, "x")])
    code, out, _ = run_cli(capsys, "verify", "pqrs")
    assert code == 1
    assert "[FAIL] forced" in out
