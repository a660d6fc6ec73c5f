"""Integration tests for the command-line interface."""
import csv
import json
import math

import pytest

from logz.core.config import get_settings
from logz.core.logging_config import reset_logging
from logz.hardness import instance_z
from logz.main import main
from logz.potentials import load_instance
from tests.conftest import gaussian_config, write_json


@pytest.fixture(autouse=True)
def detach_cli_logging():
    """Drop the console handler main() installs on the captured stream."""
    yield
    reset_logging()


def _read_csv(path):
    with open(path, newline="") as handle:
        return list(csv.reader(handle))


@pytest.mark.integration
def test_estimate_is_reproducible(tmp_path, run_config_payload):
    """Test two stripped runs of one config write byte-identical outputs."""
    config = write_json(tmp_path / "run.json", run_config_payload)
    for name in ("a", "b"):
        code = main(["estimate", "--config", config, "--output-dir", str(tmp_path / name), "--strip-timing"])
        assert code == 0
    for output in ("report.json", "stages.csv"):
        assert (tmp_path / "a" / output).read_bytes() == (tmp_path / "b" / output).read_bytes()

    report = json.loads((tmp_path / "a" / "report.json").read_text())
    assert report["method"] == "mala"
    assert report["seed"] == 7
    assert report["wall_time_seconds"] is None
    assert report["config"]["eps"] == 0.3
    assert len(_read_csv(tmp_path / "a" / "stages.csv")) == report["M"] + 1


@pytest.mark.integration
def test_estimate_prints_summary(tmp_path, run_config_payload, capsys):
    """Test the one-line summary on stdout."""
    config = write_json(tmp_path / "run.json", run_config_payload)
    assert main(["--threads", "2", "estimate", "--config", config, "--output-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("log_z_hat=")
    assert "status=complete" in out


@pytest.mark.integration
def test_env_seed_overrides_config(tmp_path, run_config_payload, monkeypatch):
    """Test LOGZ_SEED replaces the config seed."""
    monkeypatch.setenv("LOGZ_SEED", "11")
    get_settings.cache_clear()
    config = write_json(tmp_path / "run.json", run_config_payload)
    assert main(["estimate", "--config", config, "--output-dir", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "report.json").read_text())["seed"] == 11


@pytest.mark.integration
def test_estimate_check(tmp_path, run_config_payload):
    """Test --check passes a loose tolerance and exits 4 on a tight one, writing the report either way."""
    loose = write_json(tmp_path / "loose.json", {**run_config_payload, "check_tolerance": 100.0})
    assert main(["estimate", "--config", loose, "--output-dir", str(tmp_path / "loose"), "--check"]) == 0

    tight = write_json(tmp_path / "tight.json", {**run_config_payload, "check_tolerance": 1e-12})
    assert main(["estimate", "--config", tight, "--output-dir", str(tmp_path / "tight"), "--check"]) == 4
    report = json.loads((tmp_path / "tight" / "report.json").read_text())
    assert report["rel_error"] > 1e-12


@pytest.mark.integration
def test_config_errors_exit_2(tmp_path, run_config_payload, capsys):
    """Test invalid configs, missing files and bad arguments."""
    bad = write_json(tmp_path / "bad.json", {**run_config_payload, "eps": 0})
    assert main(["estimate", "--config", bad]) == 2
    assert "eps" in capsys.readouterr().err
    assert main(["estimate", "--config", str(tmp_path / "missing.json")]) == 2
    assert main(["no-such-command"]) == 2
    assert main(["--threads", "0", "estimate", "--config", bad]) == 2


@pytest.mark.integration
def test_oracle_gaussian(capsys):
    """Test the closed-form oracle prints JSON."""
    assert main(["oracle", "gaussian", "--lambdas", "1", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["log_z"] == pytest.approx(1.837877, abs=1e-6)


@pytest.mark.integration
def test_oracle_stage_ratio(capsys):
    """Test the last-stage ratio of a standard Gaussian at sigma^2 = 1/2."""
    assert main(["oracle", "stage-ratio", "--s2", "1", "--sigma-sq", "0.5", "--sigma-next-sq", "inf", "--d", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ratio"] == pytest.approx(3.0)


@pytest.mark.integration
def test_oracle_product_deviation(capsys):
    """Test the product simulation reports its bound."""
    args = ["oracle", "product-deviation", "--M", "4", "--eta", "0.01", "--eps", "0.5", "--trials", "2000", "--seed", "1"]
    assert main(args) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["bound"] == pytest.approx(0.8)
    assert payload["trials"] == 2000


@pytest.mark.integration
def test_sample_traces(tmp_path):
    """Test ULD and MALA traces have one row per step."""
    uld = write_json(tmp_path / "uld.json", {
        "sampler": "uld", "target": {"name": "gaussian", "d": 2}, "eta": 0.1, "T": 1.0, "seed": 3,
    })
    assert main(["sample", "--config", uld, "--output", str(tmp_path / "uld.csv")]) == 0
    rows = _read_csv(tmp_path / "uld.csv")
    assert rows[0] == ["t", "x_1", "x_2", "v_1", "v_2"]
    assert len(rows) == 11

    mala = write_json(tmp_path / "mala.json", {
        "sampler": "mala", "target": {"name": "gaussian", "d": 2}, "h": 0.1, "n": 5, "x0": [1.0, -1.0],
    })
    assert main(["sample", "--config", mala, "--output", str(tmp_path / "mala.csv")]) == 0
    rows = _read_csv(tmp_path / "mala.csv")
    assert rows[0] == ["step", "x_1", "x_2"]
    assert [row[0] for row in rows[1:]] == ["1", "2", "3", "4", "5"]


@pytest.mark.integration
def test_hard_instance_round_trip(tmp_path, capsys):
    """Test hardgen output verifies and feeds the quadrature oracle."""
    path = str(tmp_path / "instance.json")
    assert main(["hardgen", "--k", "2", "--n", "4", "--types", "1", "2", "2", "1", "--output", path]) == 0
    instance = load_instance(path)
    assert instance.types == [1, 2, 2, 1]

    assert main(["hardverify", "--input", path, "--points", "500"]) == 0
    assert json.loads(capsys.readouterr().out)["ok"] is True

    config = write_json(tmp_path / "oracle.json", {"target": {"name": "hard_instance", "instance_path": path}})
    assert main(["oracle", "quadrature", "--config", config, "--eps", "0.1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["log_z"] == pytest.approx(math.log(instance_z(instance)), abs=0.01)


@pytest.mark.integration
def test_bench_appends_rows(tmp_path):
    """Test one row per run, appended across invocations under a single header."""
    config = write_json(tmp_path / "bench.json", {
        "methods": ["mala"], "dims": [1, 2], "eps": [0.3], "seeds": [1], "caps": {"max_mala_draws": 200},
    })
    output = str(tmp_path / "bench.csv")
    assert main(["bench", "--config", config, "--output", output, "--strip-timing"]) == 0
    assert main(["bench", "--config", config, "--output", output, "--strip-timing"]) == 0
    rows = _read_csv(output)
    assert rows[0][0] == "method"
    assert len(rows) == 5
    assert [row[1] for row in rows[1:]] == ["1", "2", "1", "2"]
    assert all(row[5] == "complete" for row in rows[1:])
    assert rows[1] == rows[3]


@pytest.mark.integration
def test_estimate_multilevel_capped(tmp_path):
    """Test a capped multilevel config end to end through the CLI."""
    caps = {
        "max_stages": 2, "max_levels": 1, "max_samples_per_level": 32,
        "max_radius_samples": 16, "max_radius_steps": 50,
    }
    config = write_json(tmp_path / "run.json", gaussian_config("mlmc-uld", caps=caps))
    assert main(["estimate", "--config", config, "--output-dir", str(tmp_path), "--strip-timing"]) == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["budget_capped"] is True
    assert report["grad_queries"] == report["predicted_grad_queries"]
