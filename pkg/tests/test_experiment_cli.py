import json
from pathlib import Path

import numpy as np
import pytest

from sieveboot.cli import main
from sieveboot.experiment import (
    ConfigError,
    ExperimentConfig,
    companion_spec_for,
    list_presets,
    preset_config,
    run_experiment,
)
from sieveboot.dgp import Arch1Model, ARModel, InnovationSpec, LinearModel

SMALL = dict(n=200, B=200, M=200, R=200)

TINY_CONFIG = {
    "name": "tiny",
    "dgp": {"family": "linear", "coefficients": [-2.0],
            "innovation": {"family": "gaussian", "scale": 1.0}},
    "statistic": {"name": "acvf", "lag": 0},
    "checks": [
        {"id": "boot-var", "kind": "var_close", "method": "bootstrap",
         "target_id": "acvf_variance_companion", "tol": 0.5},
    ],
    "seed": 5,
    **SMALL,
}


class TestConfig:
    def test_unknown_keys_rejected(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json({**TINY_CONFIG, "bogus": 1})

    def test_missing_keys_rejected(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json({"name": "x"})

    def test_scale_floors(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json({**TINY_CONFIG, "n": 50})
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json({**TINY_CONFIG, "B": 100})

    def test_overrides(self):
        cfg = ExperimentConfig.from_json(TINY_CONFIG, seed=99)
        assert cfg.seed == 99

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            preset_config("nonexistent")

    def test_preset_catalog(self):
        names = list_presets()
        assert "acvf0-ma1-exponential" in names
        assert "mean-arch1" in names
        assert "spectral-density-ma1" in names


class TestCompanionConstruction:
    def test_invertible_ma_coefficients(self):
        # X_t = e_t + 0.5 e_{t-1} is invertible: a_j = -(-0.5)^j
        spec = companion_spec_for(LinearModel(b=(0.5,)), seed=1)
        want = -((-0.5) ** np.arange(1, 11))
        assert np.allclose(spec.a[:10], want)
        assert spec.innovation_source == "parametric"

    def test_noninvertible_ma_other_than_worked_example_rejected(self):
        with pytest.raises(ValueError):
            companion_spec_for(LinearModel(b=(0.1, -3.0)), seed=1)

    def test_ar_model_is_its_own_companion(self):
        spec = companion_spec_for(ARModel(a=(0.5, -0.2)), seed=1)
        assert np.allclose(spec.a, [0.5, -0.2])

    def test_arch_companion_is_resampled_white_noise(self):
        spec = companion_spec_for(Arch1Model(omega=1.0, alpha1=0.3), seed=1)
        assert spec.a.size == 0
        assert spec.innovation_source == "residual_resample"
        assert spec.innovation_variance == pytest.approx(1.0 / 0.7, rel=0.05)


@pytest.fixture(scope="module")
def report(tmp_path_factory):
    out = tmp_path_factory.mktemp("exp")
    cfg = ExperimentConfig.from_json(TINY_CONFIG)
    return run_experiment(cfg, out), out


class TestRunExperiment:
    def test_report_contents(self, report):
        rep, _ = report
        assert set(rep.variances) == {"bootstrap", "oracle", "truth"}
        assert all(v > 0 for v in rep.variances.values())
        assert set(rep.dk) == {"bootstrap_truth", "bootstrap_oracle", "oracle_truth"}
        assert all(0 <= v <= 1 for v in rep.dk.values())
        assert rep.targets["acvf_variance_companion"] == pytest.approx(66.0)

    def test_output_files(self, report):
        _, out = report
        assert json.loads((out / "report.json").read_text())["experiment"] == "tiny"
        lines = (out / "summary.csv").read_text().strip().splitlines()
        assert lines[0].split(",") == [
            "experiment", "method", "statistic", "n", "variance",
            "dk_vs_truth", "dk_vs_oracle", "target", "target_id", "pass"]
        assert len(lines) == 4
        for method, count in (("bootstrap", 200), ("oracle", 200), ("truth", 200)):
            law = np.loadtxt(out / "laws" / f"{method}.csv")
            assert law.size == count

    def test_deterministic_rerun(self, report, tmp_path):
        _, out = report
        cfg = ExperimentConfig.from_json(TINY_CONFIG)
        run_experiment(cfg, tmp_path)
        assert (tmp_path / "summary.csv").read_bytes() == (out / "summary.csv").read_bytes()

    def test_seed_changes_laws(self, tmp_path):
        cfg = ExperimentConfig.from_json(TINY_CONFIG, seed=6)
        rep = run_experiment(cfg)
        base = run_experiment(ExperimentConfig.from_json(TINY_CONFIG))
        assert not np.array_equal(rep.laws["bootstrap"].sample,
                                  base.laws["bootstrap"].sample)


class TestCli:
    def test_list(self, capsys):
        assert main(["list"]) == 0
        out = capsys.readouterr().out
        assert "acvf0-ma1-exponential" in out

    def test_run_config_file(self, tmp_path, capsys):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(TINY_CONFIG))
        code = main(["run", "--config", str(cfg_path), "--out", str(tmp_path / "out")])
        out = capsys.readouterr().out
        assert code == 0
        assert "check boot-var" in out
        assert (tmp_path / "out" / "summary.csv").exists()

    def test_run_bad_config_exits_2(self, tmp_path, capsys):
        cfg_path = tmp_path / "bad.json"
        cfg_path.write_text(json.dumps({**TINY_CONFIG, "bogus": 1}))
        assert main(["run", "--config", str(cfg_path)]) == 2

    def test_unknown_preset_exits_2(self, capsys):
        assert main(["preset", "nope"]) == 2

    def test_asymptotics(self, capsys):
        code = main([
            "asymptotics",
            "--model", json.dumps(TINY_CONFIG["dgp"]),
            "--statistic", json.dumps({"name": "acvf", "lag": 0}),
        ])
        out = capsys.readouterr().out
        assert code == 0
        assert "acvf_variance_companion = 66" in out

    def test_asymptotics_mean(self, capsys):
        code = main(["asymptotics", "--model", json.dumps(TINY_CONFIG["dgp"]),
                     "--statistic", "mean"])
        out = capsys.readouterr().out
        assert code == 0
        assert "mean_long_run_variance = 1" in out
