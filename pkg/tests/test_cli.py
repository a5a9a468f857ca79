import io
import json

import click
import pandas as pd
import pytest

import main_app
from database.run_logs import get_recent_runs
from mittag_engine import MLParams, ml_series
from verification import SuiteResult, compare_values


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("MLCM_DEFAULT_TOL", raising=False)
    monkeypatch.delenv("MLCM_RUN_DB", raising=False)


def _suite(passed: bool) -> SuiteResult:
    report = compare_values(
        "unit", [{"x": 1.0}], [1.0 if passed else 1.5], [1.0], 1e-6, reference="truth"
    )
    return SuiteResult(suite="unit", reports=[report])


def test_eval_series_text(capsys):
    assert main_app.run(["eval", "--alpha", "0.5", "--x=-1"]) == 0
    assert capsys.readouterr().out == "0.4275835762\n"


def test_eval_exponential(capsys):
    assert main_app.run(["eval", "--alpha", "1", "--x=-1", "--method", "series"]) == 0
    assert capsys.readouterr().out == "0.3678794412\n"


def test_eval_full_precision_round_trips(capsys):
    assert main_app.run(["eval", "--alpha", "0.5", "--x=-1", "--full-precision"]) == 0
    printed = float(capsys.readouterr().out)
    assert printed == ml_series(MLParams(0.5, 1.0, 1.0), -1.0)


def test_eval_csv(capsys):
    assert main_app.run(["eval", "--alpha", "0.5", "--x=-1", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "x,value,error_estimate,method"
    assert lines[1].startswith("-1,0.4275835762,")
    assert lines[1].endswith(",series")


def test_eval_json_is_deterministic(capsys):
    argv = ["eval", "--alpha", "0.5", "--beta", "1.2", "--gamma", "1.5", "--x=-1", "--format", "json"]
    assert main_app.run(argv) == 0
    first = capsys.readouterr().out
    assert main_app.run(argv) == 0
    assert capsys.readouterr().out == first
    document = json.loads(first)
    assert document["meta"]["command"] == "eval"
    assert document["meta"]["gamma"] == 1.5
    assert document["data"][0]["method"] == "series"


def test_eval_with_lambda(capsys):
    assert main_app.run(["eval", "--alpha", "0.5", "--lambda", "1", "--x", "1"]) == 0
    assert capsys.readouterr().out == "0.4275835762\n"


def test_eval_pollard_route(capsys):
    assert main_app.run(["eval", "--alpha", "0.5", "--x=-1", "--method", "pollard"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(0.4275835762, abs=1e-8)


def test_eval_all_uses_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("MLCM_DEFAULT_TOL", "1e-4")
    assert main_app.run(["eval", "--alpha", "0.5", "--x=-1", "--method", "all", "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["meta"]["tolerance"] == 1e-4
    assert document["report"]["passed"] is True
    assert set(document["report"]["cases"][0]["route_values"]) == {"series", "pollard", "spectral"}


def test_unknown_flag_is_usage_error():
    assert main_app.run(["eval", "--alpha", "0.5", "--x=-1", "--bogus"]) == 2


def test_invalid_parameters_are_usage_errors(capsys):
    assert main_app.run(["eval", "--alpha=-0.5", "--x=-1"]) == 2
    assert "alpha" in capsys.readouterr().err


def test_series_refusal_is_numerical_failure(capsys):
    assert main_app.run(["eval", "--alpha", "0.5", "--x=-60"]) == 3
    assert "Numerical failure" in capsys.readouterr().err


def test_integral_route_rejects_positive_argument():
    assert main_app.run(["eval", "--alpha", "0.5", "--x", "1", "--method", "pollard"]) == 2


def test_table_needs_two_steps():
    assert main_app.run(["table", "--alpha", "0.5", "--x-min=-1", "--x-max", "0", "--steps", "1"]) == 2


def test_table_csv(capsys):
    argv = ["table", "--alpha", "0.5", "--x-min=-2", "--x-max", "0", "--steps", "5"]
    assert main_app.run(argv) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert list(frame.columns) == main_app.CSV_COLUMNS
    assert len(frame) == 5
    assert frame["value"].iloc[-1] == pytest.approx(1.0)
    assert frame["x"].is_monotonic_increasing


def test_table_json_to_file(tmp_path):
    out = tmp_path / "table.json"
    argv = ["table", "--alpha", "1", "--x-min", "0", "--x-max", "1", "--steps", "3", "--format", "json", "-o", str(out)]
    assert main_app.run(argv) == 0
    document = json.loads(out.read_text())
    assert [row["x"] for row in document["data"]] == [0.0, 0.5, 1.0]
    assert document["data"][2]["value"] == pytest.approx(2.718281828, rel=1e-9)


def test_density_stable(capsys):
    argv = ["density", "--family", "stable", "--alpha", "0.5", "--x-min", "0.5", "--x-max", "1", "--steps", "2"]
    assert main_app.run(argv) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert frame["value"].iloc[1] == pytest.approx(0.21969564, abs=1e-8)


def test_cdf_stable(capsys):
    argv = ["cdf", "--family", "stable", "--alpha", "0.5", "--x-min", "0", "--x-max", "1", "--steps", "2"]
    assert main_app.run(argv) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert frame["value"].tolist() == pytest.approx([0.0, 0.4795001222], abs=1e-9)


def test_verify_passing_suite_is_recorded(capsys, monkeypatch, tmp_path):
    monkeypatch.setattr(main_app, "run_suite", lambda *args, **kwargs: _suite(True))
    db = tmp_path / "runs.db"
    assert main_app.run(["verify", "--suite", "cm", "--record-db", str(db)]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["report"]["passed"] is True
    runs = get_recent_runs(path=db)
    assert len(runs) == 1
    assert runs[0]["command"] == "verify --suite cm"
    assert runs[0]["passed"] is True


def test_verify_failing_suite_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(main_app, "run_suite", lambda *args, **kwargs: _suite(False))
    assert main_app.run(["verify", "--suite", "routes", "--format", "text"]) == 1
    out = capsys.readouterr().out
    assert "FAIL  unit" in out
    assert out.rstrip().endswith("unit: 0/1 checks passed")


def test_verify_tolerance_from_environment(monkeypatch, capsys):
    seen = {}

    def fake_run_suite(name, tol=None, perturb=0.0, workers=1):
        seen.update(name=name, tol=tol, perturb=perturb, workers=workers)
        return _suite(True)

    monkeypatch.setattr(main_app, "run_suite", fake_run_suite)
    monkeypatch.setenv("MLCM_DEFAULT_TOL", "1e-5")
    assert main_app.run(["verify", "--suite", "laplace", "--workers", "2"]) == 0
    assert seen == {"name": "laplace", "tol": 1e-5, "perturb": 0.0, "workers": 2}
    assert main_app.run(["verify", "--suite", "laplace", "--tol", "1e-3"]) == 0
    assert seen["tol"] == 1e-3


def test_unknown_suite_is_usage_error():
    assert main_app.run(["verify", "--suite", "nonsense"]) == 2


def test_version(capsys):
    assert main_app.run(["--version"]) == 0
    assert main_app.__version__ in capsys.readouterr().out


def test_eval_all_rejects_positive_argument(capsys):
    assert main_app.run(["eval", "--alpha", "0.5", "--x", "1", "--method", "all"]) == 2
    assert "z <= 0" in capsys.readouterr().err


def test_eval_all_rejects_non_pollard_parameters():
    assert main_app.run(["eval", "--alpha", "0.5", "--beta", "0.5", "--gamma", "1.5", "--x=-1", "--method", "all"]) == 2


@pytest.mark.slow
def test_verify_detects_injected_perturbation(capsys):
    argv = ["verify", "--suite", "routes", "--perturb", "1e-3", "--tol", "1e-5", "--format", "text"]
    assert main_app.run(argv) == 1
    assert "FAIL" in capsys.readouterr().out


def test_abort_is_not_a_verification_failure(monkeypatch):
    def interrupted(*args, **kwargs):
        raise click.Abort()

    monkeypatch.setattr(main_app, "run_suite", interrupted)
    assert main_app.run(["verify", "--suite", "cm"]) == 2
