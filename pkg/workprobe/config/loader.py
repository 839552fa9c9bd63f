"""
JSON configuration loading.

Handles:
- JSON syntax errors (reported with line and column)
- Field names mirroring Scenario / DriveProfile / RunConfig; unknown fields rejected
- Type and range validation, reported with the field path
- u-grids given as a list or as {"start", "stop", "step"}

Example config:
    {
      "scenario": {
        "omega": 1.0, "nbar": 1.0, "tau": 10.0, "gamma": 0.5, "cutoff": 64,
        "drive": {"kind": "tanh_ramp", "lambda_final": 0.1, "ramp_rate": 1.0},
        "u_grid": {"start": 0.0, "stop": 20.0, "step": 0.05}
      },
      "variant": "appendix",
      "output_path": "chi.csv"
    }
"""

import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Type, TypeVar, Union

import numpy as np

from workprobe.config.run import ConfigError, RunConfig
from workprobe.logging import get_probe_logger
from workprobe.oscillator.model import DriveKind, DriveProfile, Platform, Scenario
from workprobe.protocol.dephasing import DurationRule
from workprobe.protocol.runner import Variant

logger = get_probe_logger(__name__)

E = TypeVar("E", bound=Enum)

SCENARIO_FIELDS = {
    "omega",
    "beta",
    "nbar",
    "phi",
    "tau",
    "gamma",
    "cutoff",
    "drive",
    "u_grid",
    "platform",
}
DRIVE_FIELDS = {"kind", "lambda_final", "ramp_rate", "table"}
GRID_FIELDS = {"start", "stop", "step"}
DEPHASING_FIELDS = {"duration_rule", "constant_time"}
RUN_FIELDS = {
    "scenario",
    "variant",
    "output_path",
    "report_path",
    "checks",
    "workers",
    "propagator_steps",
    "dephasing",
}


def _join(path: str, key: Union[str, int]) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _require_mapping(value: Any, path: str) -> Mapping[str, Any]:
    if not isinstance(value, dict):
        raise ConfigError(f"Expected an object, got {type(value).__name__}", path)
    return value


def _reject_unknown(data: Mapping[str, Any], allowed: set, path: str) -> None:
    for key in data:
        if key not in allowed:
            raise ConfigError(
                f"Unknown field; expected one of {', '.join(sorted(allowed))}", _join(path, key)
            )


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"Expected a number, got {value!r}", path)
    if not math.isfinite(value):
        raise ConfigError(f"Expected a finite number, got {value!r}", path)
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"Expected an integer, got {value!r}", path)
    return value


def _string(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise ConfigError(f"Expected a string, got {value!r}", path)
    return value


def _enum(enum_cls: Type[E], value: Any, path: str) -> E:
    text = _string(value, path)
    try:
        return enum_cls(text)
    except ValueError:
        choices = ", ".join(m.value for m in enum_cls)
        raise ConfigError(f"Unknown value {text!r}; expected one of {choices}", path) from None


def parse_u_grid(value: Any, path: str = "scenario.u_grid") -> Tuple[float, ...]:
    """List of numbers, or an inclusive {"start", "stop", "step"} range."""
    if isinstance(value, list):
        return tuple(_number(v, _join(path, i)) for i, v in enumerate(value))

    data = _require_mapping(value, path)
    _reject_unknown(data, GRID_FIELDS, path)
    missing = GRID_FIELDS - set(data)
    if missing:
        raise ConfigError(f"Missing field(s) {', '.join(sorted(missing))}", path)

    start = _number(data["start"], _join(path, "start"))
    stop = _number(data["stop"], _join(path, "stop"))
    step = _number(data["step"], _join(path, "step"))
    if step <= 0:
        raise ConfigError(f"step must be positive, got {step}", _join(path, "step"))
    if stop < start:
        raise ConfigError(f"stop {stop} is below start {start}", _join(path, "stop"))

    intervals = (stop - start) / step
    count = round(intervals)
    if abs(intervals - count) > 1e-9 * max(1.0, intervals):
        raise ConfigError(f"(stop − start) = {stop - start} is not a multiple of step {step}", path)
    return tuple(np.linspace(start, stop, count + 1).tolist())


def parse_drive(value: Any, path: str = "scenario.drive") -> DriveProfile:
    data = _require_mapping(value, path)
    _reject_unknown(data, DRIVE_FIELDS, path)
    if "kind" not in data:
        raise ConfigError("Missing field 'kind'", path)
    kind = _enum(DriveKind, data["kind"], _join(path, "kind"))

    table: Optional[Tuple[Tuple[float, float], ...]] = None
    if "table" in data:
        rows = data["table"]
        if not isinstance(rows, list):
            raise ConfigError("Expected a list of [t, λ] pairs", _join(path, "table"))
        parsed: List[Tuple[float, float]] = []
        for i, row in enumerate(rows):
            row_path = _join(_join(path, "table"), i)
            if not isinstance(row, list) or len(row) != 2:
                raise ConfigError(f"Expected a [t, λ] pair, got {row!r}", row_path)
            parsed.append((_number(row[0], row_path), _number(row[1], row_path)))
        table = tuple(parsed)

    kwargs: Dict[str, Any] = {"kind": kind, "table": table}
    for key in ("lambda_final", "ramp_rate"):
        if key in data:
            kwargs[key] = _number(data[key], _join(path, key))

    try:
        return DriveProfile(**kwargs)
    except ValueError as e:
        raise ConfigError(str(e), path) from e


def parse_scenario(value: Any, path: str = "scenario") -> Scenario:
    data = _require_mapping(value, path)
    _reject_unknown(data, SCENARIO_FIELDS, path)

    kwargs: Dict[str, Any] = {}
    for key in ("omega", "beta", "nbar", "phi", "tau", "gamma"):
        if key in data and data[key] is not None:
            kwargs[key] = _number(data[key], _join(path, key))
    if "cutoff" in data:
        kwargs["cutoff"] = _integer(data["cutoff"], _join(path, "cutoff"))
    if "platform" in data:
        kwargs["platform"] = _enum(Platform, data["platform"], _join(path, "platform"))
    if "drive" in data:
        kwargs["drive"] = parse_drive(data["drive"], _join(path, "drive"))
    if "u_grid" in data:
        kwargs["u_grid"] = parse_u_grid(data["u_grid"], _join(path, "u_grid"))

    try:
        return Scenario(**kwargs)
    except ValueError as e:
        raise ConfigError(str(e), path) from e


def parse_config(data: Any) -> RunConfig:
    """
    Build a RunConfig from decoded JSON.

    Raises:
        ConfigError: with the path of the first offending field
    """
    root = _require_mapping(data, "")
    _reject_unknown(root, RUN_FIELDS, "")
    if "scenario" not in root:
        raise ConfigError("Missing field 'scenario'")

    kwargs: Dict[str, Any] = {"scenario": parse_scenario(root["scenario"])}
    if "variant" in root:
        kwargs["variant"] = _enum(Variant, root["variant"], "variant")
    for key in ("output_path", "report_path"):
        if key in root and root[key] is not None:
            kwargs[key] = Path(_string(root[key], key))
    if "checks" in root:
        checks = root["checks"]
        if not isinstance(checks, list):
            raise ConfigError("Expected a list of check names", "checks")
        kwargs["checks"] = tuple(_string(c, _join("checks", i)) for i, c in enumerate(checks))
    for key in ("workers", "propagator_steps"):
        if key in root:
            kwargs[key] = _integer(root[key], key)
    if "dephasing" in root:
        deph = _require_mapping(root["dephasing"], "dephasing")
        _reject_unknown(deph, DEPHASING_FIELDS, "dephasing")
        if "duration_rule" in deph:
            kwargs["duration_rule"] = _enum(
                DurationRule, deph["duration_rule"], "dephasing.duration_rule"
            )
        if "constant_time" in deph:
            kwargs["constant_time"] = _number(deph["constant_time"], "dephasing.constant_time")

    return RunConfig(**kwargs)


def load_config(path: Union[str, Path]) -> RunConfig:
    """
    Load a JSON run configuration.

    Raises:
        ConfigError: unreadable file, JSON syntax error (with line/column) or
                     invalid field (with its path)
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e.strerror or e}") from e

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON: {e.msg}", line=e.lineno, column=e.colno) from e

    config = parse_config(data)
    logger.debug(f"Loaded config {path}: {len(config.scenario.u_grid)} grid points")
    return config
