from pathlib import Path

import numpy as np
import pytest

from rindler_corr.exception import ConfigError, InvalidParameterError
from rindler_corr.model import TruncationPolicy
from rindler_corr.model.sweep_config import (
    AccelerationAxisConfig,
    SqueezingAxisConfig,
    SweepConfig,
)
from rindler_corr.utils.const import WORKERS_ENV_VAR, EigenSolver, TruncationMode


class TestSweepConfig:
    def test_defaults(self):
        config = SweepConfig()
        assert isinstance(config.axis, SqueezingAxisConfig)
        assert config.axis.steps == 121
        assert config.truncation.mode is TruncationMode.ADAPTIVE
        assert config.out == Path("out")
        assert not config.plots
        assert config.workers is None

    def test_invalid_workers(self):
        with pytest.raises(InvalidParameterError):
            SweepConfig(workers=0)

    def test_from_file(self, sample_config_path):
        config = SweepConfig.from_file(sample_config_path)
        np.testing.assert_allclose(config.axis.grid(), np.linspace(0.0, 1.5, 7))
        assert config.truncation.tail_eps == 1e-10
        assert config.truncation.n_max_cap == 4096
        assert config.out == Path("results")
        assert config.plots
        assert config.workers == 3
        assert config.numerics.eigensolver is EigenSolver.JACOBI
        assert config.numerics.tolerances.psd == 1e-11

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            SweepConfig.from_file(tmp_path / "absent.txt")

    def test_text_round_trip(self, sample_config_path):
        config = SweepConfig.from_file(sample_config_path)
        assert SweepConfig.from_text(config.to_text()).to_mapping() == config.to_mapping()

    def test_fixed_truncation_mapping(self):
        config = SweepConfig(truncation=TruncationPolicy.fixed(40))
        mapping = config.to_mapping()
        assert mapping["nmax"] == "40"
        assert "tail_eps" not in mapping

    def test_floats_are_written_exactly(self):
        config = SweepConfig(axis=SqueezingAxisConfig(0.0, 0.1, 3))
        assert config.to_mapping()["alpha_max"] == "0.1"

    def test_acceleration_axis(self):
        config = SweepConfig.from_text(
            "axis=acceleration\nomega=1\naccel_min=1\naccel_max=10\nsteps=4\n"
        )
        assert isinstance(config.axis, AccelerationAxisConfig)
        specs = config.axis.specs()
        assert [s.accel for s in specs] == [1.0, 4.0, 7.0, 10.0]
        assert all(s.omega == 1.0 for s in specs)

    def test_acceleration_axis_needs_omega(self):
        with pytest.raises(ConfigError):
            SweepConfig.from_text("axis=acceleration\naccel_min=1\naccel_max=2\n")

    @pytest.mark.parametrize(
        "text",
        [
            "steps\n",
            "=3\n",
            "colour=blue\n",
            "steps=3\nsteps=4\n",
        ],
    )
    def test_malformed_text(self, text):
        with pytest.raises(ConfigError):
            SweepConfig.parse_text(text)

    @pytest.mark.parametrize(
        "values",
        [
            {"steps": "1"},
            {"steps": "many"},
            {"alpha_min": "2", "alpha_max": "1"},
            {"axis": "temperature"},
            {"plots": "maybe"},
            {"nmax": "0"},
            {"eigensolver": "power"},
            {"tail_eps": "2"},
        ],
    )
    def test_invalid_values(self, values):
        with pytest.raises(ConfigError):
            SweepConfig.from_mapping(values)

    def test_typed_values_are_accepted(self):
        config = SweepConfig.from_mapping({"steps": 5, "plots": True, "out": Path("x")})
        assert config.axis.steps == 5
        assert config.plots
        assert config.out == Path("x")


class TestEffectiveWorkers:
    def test_configured_value_wins(self, monkeypatch):
        monkeypatch.setenv(WORKERS_ENV_VAR, "7")
        assert SweepConfig(workers=2).effective_workers == 2

    def test_environment_fallback(self, monkeypatch):
        monkeypatch.setenv(WORKERS_ENV_VAR, "7")
        assert SweepConfig().effective_workers == 7

    def test_cpu_count_fallback(self, monkeypatch):
        monkeypatch.delenv(WORKERS_ENV_VAR, raising=False)
        monkeypatch.setattr("os.cpu_count", lambda: 5)
        assert SweepConfig().effective_workers == 5

    @pytest.mark.parametrize("value", ["two", "0"])
    def test_invalid_environment(self, monkeypatch, value):
        monkeypatch.setenv(WORKERS_ENV_VAR, value)
        with pytest.raises(ConfigError):
            SweepConfig().effective_workers
