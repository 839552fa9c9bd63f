"""
Run configuration: JSON loading, presets and CLI overrides.
"""

from workprobe.config.loader import load_config, parse_config, parse_scenario, parse_u_grid
from workprobe.config.presets import PRESETS, Preset, get_preset, preset_fig2c, preset_trivial
from workprobe.config.run import ConfigError, RunConfig, scenario_to_dict

__all__ = [
    "ConfigError",
    "PRESETS",
    "Preset",
    "RunConfig",
    "get_preset",
    "load_config",
    "parse_config",
    "parse_scenario",
    "parse_u_grid",
    "preset_fig2c",
    "preset_trivial",
    "scenario_to_dict",
]
