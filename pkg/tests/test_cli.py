import json
from types import SimpleNamespace

import pandas as pd
import pytest

import cli.handlers
from cli import RunConfig
from config import PREDICTION_ORDER
from core.errors import UnknownProblemError
from core.exact_count import ResidueFile, read_series, write_residues
from main import (
    EXIT_INSUFFICIENT_TERMS,
    EXIT_OK,
    EXIT_SERIES_FORMAT,
    EXIT_UNKNOWN_PROBLEM,
    EXIT_USAGE,
    dispatch,
)
from tests.conftest import GOLDEN


@pytest.fixture
def residue_dir(tmp_path, monkeypatch):
    path = tmp_path / "residues"
    monkeypatch.setattr(cli.handlers, "RESIDUE_DIR", str(path))
    return path


def test_enumerate_writes_a_series(tmp_path, residue_dir):
    out = tmp_path / "rh.series"
    code = dispatch(["enumerate", "--problem", "hex-rhombus-saw", "--lmax", "4", "--primes", "1", "--out", str(out)])
    assert code == EXIT_OK
    text = out.read_text(encoding="utf-8")
    assert "4\t25092\n" in text
    series = read_series(out)
    assert series.config["problem"] == "hex-rhombus-saw"
    assert len(list(residue_dir.glob("*.residues"))) == 1


def test_combine_single_residue_file(tmp_path):
    path = write_residues(ResidueFile("hex-triangle-saw", 101, {1: 2, 2: 7, 3: 44}), tmp_path / "t.residues")
    out = tmp_path / "t.series"
    assert dispatch(["combine", "--residues", str(path), "--out", str(out)]) == EXIT_OK
    assert read_series(out).values() == [2, 7, 44]


def test_analyze_writes_csv_with_header_and_summary(tmp_path):
    out = tmp_path / "ratio.csv"
    series = GOLDEN / "hex-triangle-saw.series"
    assert dispatch(["analyze", "--series", str(series), "--method", "ratio", "--out", str(out)]) == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# config: ")
    config = json.loads(lines[0][len("# config: "):])
    assert config["method"] == "ratio"
    assert lines[1].split(",")[0] == "n"
    assert "# summary" in lines
    assert any(line.startswith("# terms: ") for line in lines)


def test_analyze_csv_reads_back_with_pandas(tmp_path):
    out = tmp_path / "ratio.csv"
    series = GOLDEN / "hex-triangle-saw.series"
    assert dispatch(["analyze", "--series", str(series), "--method", "ratio", "--out", str(out)]) == EXIT_OK
    table = pd.read_csv(out, comment="#")
    assert list(table.columns)[0] == "n"
    assert len(table) > 10


@pytest.mark.parametrize("method, problem, extra, powers", [
    ("m2", "hex-triangle-saw", [], "[2, 3]"),
    ("m2", "hex-triangle-saw", ["--fit-powers", "2"], "[2]"),
    ("p3", "hex-triangle-saw", ["--fit-powers", "2,4"], "[2, 4]"),
    ("p3", "hex-square-saw", [], "[2, 4]"),
    ("p3", "hex-square-saw", ["--fit-powers", "2,3"], "[2, 3]"),
])
def test_fit_powers_reach_every_fit(tmp_path, method, problem, extra, powers):
    out = tmp_path / f"{method}.csv"
    argv = ["analyze", "--series", str(GOLDEN / f"{problem}.series"), "--method", method, "--out", str(out)]
    assert dispatch(argv + extra) == EXIT_OK
    assert f"# powers: {powers}" in out.read_text(encoding="utf-8").splitlines()


@pytest.fixture
def prediction_calls(monkeypatch):
    calls = []

    def fake_predict(series, n_extra, cutoff, order):
        calls.append(order)
        return SimpleNamespace(coefficients=[], approximants=0, diagnostic="sem termos")

    monkeypatch.setattr(cli.handlers, "predict_coefficients", fake_predict)
    return calls


def test_extend_passes_the_order(prediction_calls):
    series = str(GOLDEN / "hex-triangle-saw.series")
    assert dispatch(["extend", "--series", series]) == EXIT_OK
    assert dispatch(["extend", "--series", series, "--order", "2"]) == EXIT_OK
    assert prediction_calls == [PREDICTION_ORDER, 2]


def test_predict_check_passes_the_order(tmp_path, prediction_calls):
    series = str(GOLDEN / "hex-triangle-saw.series")
    argv = ["analyze", "--series", series, "--method", "predict-check", "--out", str(tmp_path / "p.csv")]
    assert dispatch(argv + ["--order", "1"]) == EXIT_OK
    assert prediction_calls == [1]


@pytest.mark.parametrize("argv, code", [
    (["enumerate", "--problem", "sq-nothing", "--lmax", "3"], EXIT_UNKNOWN_PROBLEM),
    (["enumerate", "--problem", "sq-saw-crossing", "--lmin", "4", "--lmax", "2"], EXIT_USAGE),
    (["enumerate", "--problem", "sq-saw-crossing"], EXIT_USAGE),
    (["analyze", "--series", "x.series", "--method", "p1"], EXIT_USAGE),
    (["analyze", "--series", "x.series", "--method", "bogus"], EXIT_USAGE),
    (["nothing"], EXIT_USAGE),
])
def test_usage_errors(argv, code):
    assert dispatch(argv) == code


def test_malformed_series_exit_code(tmp_path):
    bad = tmp_path / "bad.series"
    bad.write_text("# kind: exact\n1\t2\n", encoding="utf-8")
    assert dispatch(["analyze", "--series", str(bad), "--method", "ratio"]) == EXIT_SERIES_FORMAT


def test_short_series_exit_code(tmp_path):
    short = tmp_path / "short.series"
    short.write_text("# problem: hex-triangle-saw\n# kind: exact\n1\t2\n2\t7\n3\t44\n", encoding="utf-8")
    assert dispatch(["analyze", "--series", str(short), "--method", "m2"]) == EXIT_INSUFFICIENT_TERMS
    assert dispatch(["analyze", "--series", str(short), "--method", "predict-check"]) == EXIT_INSUFFICIENT_TERMS


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("enumerate", problem="hex-rhombus-saw").validate()
    with pytest.raises(UnknownProblemError):
        RunConfig("enumerate", problem="hex-nothing", L_max=3).validate()
    with pytest.raises(ValueError):
        RunConfig("analyze", series="s", method="ratio", trim=0.5).validate()
    with pytest.raises(ValueError):
        RunConfig("extend", series="s", order=0).validate()
    config = RunConfig("analyze", series="s", method="bda-scan", lambda_grid=(1.1, 1.2)).validate()
    [header] = config.header_lines()
    data = json.loads(header[len("# config: "):])
    assert data["lambda_grid"] == [1.1, 1.2]
    assert "problem" not in data and "residues" not in data


@pytest.mark.slow
def test_selftest_passes(capsys):
    assert dispatch(["selftest"]) == EXIT_OK
    assert "11/11" in capsys.readouterr().out
