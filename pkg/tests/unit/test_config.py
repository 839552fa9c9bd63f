"""
Unit tests for run configuration loading and presets.
"""

import json
import math
from pathlib import Path

import pytest

from workprobe.config import (
    PRESETS,
    ConfigError,
    RunConfig,
    get_preset,
    load_config,
    parse_config,
    parse_u_grid,
    preset_fig2c,
)
from workprobe.oscillator.model import DriveKind, Platform
from workprobe.protocol.dephasing import DurationRule
from workprobe.protocol.runner import Variant


def _minimal(**scenario):
    data = {"scenario": {"nbar": 1.0, "tau": 10.0, "cutoff": 32}}
    data["scenario"].update(scenario)
    return data


class TestParseConfig:
    """Decoded JSON to RunConfig."""

    def test_minimal(self):
        """Test defaults for a minimal config."""
        config = parse_config(_minimal())
        assert config.scenario.beta == pytest.approx(math.log(2.0))
        assert config.variant is Variant.APPENDIX
        assert config.workers == 1
        assert config.output_path is None

    def test_full(self):
        """Test every top-level field."""
        data = _minimal(
            gamma=0.5,
            platform="nano",
            drive={"kind": "tanh_ramp", "lambda_final": 0.1, "ramp_rate": 1.0},
            u_grid={"start": 0.0, "stop": 1.0, "step": 0.25},
        )
        data.update(
            variant="general",
            output_path="out.csv",
            report_path="report.json",
            checks=["jarzynski", "crooks"],
            workers=4,
            propagator_steps=1024,
            dephasing={"duration_rule": "u_plus_constant", "constant_time": 2.0},
        )
        config = parse_config(data)

        assert config.variant is Variant.GENERAL
        assert config.output_path == Path("out.csv")
        assert config.checks == ("jarzynski", "crooks")
        assert config.scenario.platform is Platform.NANO
        assert config.scenario.drive.kind is DriveKind.TANH_RAMP
        assert config.scenario.u_grid == (0.0, 0.25, 0.5, 0.75, 1.0)
        assert config.dephasing.duration_rule is DurationRule.U_PLUS_CONSTANT
        assert config.dephasing.coherence_factor(1.0) == pytest.approx(math.exp(-1.5))

    def test_tabulated_drive(self):
        """Test a [t, λ] table."""
        config = parse_config(_minimal(drive={"kind": "tabulated", "table": [[0, 0], [10, 0.1]]}))
        assert config.scenario.drive.table == ((0.0, 0.0), (10.0, 0.1))

    @pytest.mark.parametrize(
        "data, path",
        [
            ({"scenario": {"nbar": 1.0, "colour": "red"}}, "scenario.colour"),
            (_minimal(drive={"kind": "spline"}), "scenario.drive.kind"),
            (_minimal(drive={"kind": "constant", "lambda_final": "big"}), "scenario.drive.lambda_final"),
            (_minimal(cutoff=32.5), "scenario.cutoff"),
            (_minimal(u_grid=[0.0, "x"]), "scenario.u_grid[1]"),
            ({**_minimal(), "variant": "fancy"}, "variant"),
            ({**_minimal(), "extra": 1}, "extra"),
            ({**_minimal(), "checks": ["jarzynski", "entropy"]}, "checks"),
            ({**_minimal(), "workers": 0}, "workers"),
            ({**_minimal(), "dephasing": {"rate": 1}}, "dephasing.rate"),
        ],
    )
    def test_error_paths(self, data, path):
        """Test that errors name the offending field."""
        with pytest.raises(ConfigError) as excinfo:
            parse_config(data)
        assert excinfo.value.path == path
        assert f"field '{path}'" in str(excinfo.value)

    def test_scenario_validation_is_wrapped(self):
        """Test that Scenario ValueErrors surface as ConfigError."""
        with pytest.raises(ConfigError) as excinfo:
            parse_config(_minimal(tau=-1.0))
        assert excinfo.value.path == "scenario"

    def test_missing_scenario(self):
        """Test that a scenario is required."""
        with pytest.raises(ConfigError, match="scenario"):
            parse_config({"variant": "general"})

    def test_round_trip(self):
        """Test that to_dict() parses back to the same run."""
        config = parse_config(_minimal(drive={"kind": "sudden", "lambda_final": 0.2}, u_grid=[0, 1.5]))
        again = parse_config(json.loads(json.dumps(config.to_dict())))
        assert again.scenario == config.scenario
        assert again.checks == config.checks


class TestUGrid:
    """u-grid forms."""

    def test_inclusive_range(self):
        """Test that the stop value is included."""
        grid = parse_u_grid({"start": 0, "stop": 20, "step": 0.05})
        assert len(grid) == 401
        assert grid[-1] == 20.0

    def test_range_must_divide(self):
        """Test that a step not dividing the range is refused."""
        with pytest.raises(ConfigError, match="not a multiple"):
            parse_u_grid({"start": 0, "stop": 1, "step": 0.3})

    def test_empty_list(self):
        """Test that an empty list is a valid (empty) grid."""
        assert parse_u_grid([]) == ()

    @pytest.mark.parametrize("grid", [{"start": 0, "stop": 1}, {"start": 0, "stop": 1, "step": 0}])
    def test_invalid_range(self, grid):
        """Test missing and non-positive step."""
        with pytest.raises(ConfigError):
            parse_u_grid(grid)


class TestLoadConfig:
    """Reading configuration files."""

    def test_load(self, tmp_path):
        """Test loading a file."""
        path = tmp_path / "run.json"
        path.write_text(json.dumps(_minimal()))
        assert load_config(path).scenario.cutoff == 32

    def test_syntax_error_location(self, tmp_path):
        """Test that JSON syntax errors report line and column."""
        path = tmp_path / "run.json"
        path.write_text('{\n  "scenario": {\n    "nbar": 1.0,\n  }\n}\n')
        with pytest.raises(ConfigError) as excinfo:
            load_config(path)
        assert excinfo.value.line == 4
        assert excinfo.value.column is not None
        assert str(excinfo.value).startswith("line 4, column")

    def test_missing_file(self, tmp_path):
        """Test that an unreadable file is a ConfigError."""
        with pytest.raises(ConfigError, match="Cannot read"):
            load_config(tmp_path / "absent.json")


class TestOverrides:
    """Command-line overrides."""

    def test_cutoff_and_variant(self):
        """Test overriding N, the variant and the output path."""
        config = RunConfig(scenario=preset_fig2c())
        changed = config.with_overrides(cutoff=96, variant=Variant.GENERAL, output_path=Path("x.csv"))
        assert changed.scenario.cutoff == 96
        assert changed.variant is Variant.GENERAL
        assert changed.output_path == Path("x.csv")
        assert config.scenario.cutoff == 64

    def test_invalid_cutoff(self):
        """Test that N < 2 is reported against the cutoff option."""
        with pytest.raises(ConfigError) as excinfo:
            RunConfig(scenario=preset_fig2c()).with_overrides(cutoff=1)
        assert excinfo.value.path == "cutoff"


class TestPresets:
    """Named scenarios."""

    def test_fig2c(self):
        """Test the fig2c parameters."""
        s = preset_fig2c()
        assert s.beta == pytest.approx(math.log(2.0))
        assert s.tau == 10.0
        assert s.gamma == 0.5
        assert s.cutoff == 64
        assert len(s.u_grid) == 401
        assert s.u_grid[1] == pytest.approx(0.05)
        assert s.lambda_final == pytest.approx(0.1 * math.tanh(10.0))

    def test_trivial(self):
        """Test that the trivial preset does no work."""
        assert get_preset("trivial").build().drive.is_trivial

    def test_unknown_preset(self):
        """Test that unknown names raise ConfigError."""
        with pytest.raises(ConfigError, match="Unknown preset"):
            get_preset("fig9")

    def test_presets_round_trip(self):
        """Test that every preset serialises to a loadable config."""
        for preset in PRESETS.values():
            config = preset.run_config()
            assert parse_config(config.to_dict()).scenario == config.scenario
