"""
Run configuration shared by the sweep, verify and pw commands.
"""

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from workprobe.checks import CHECKS, DEFAULT_CHECKS
from workprobe.oscillator.model import DriveKind, Scenario
from workprobe.protocol.dephasing import DephasingModel, DurationRule
from workprobe.protocol.runner import Variant
from workprobe.work.process import DEFAULT_STEPS


class ConfigError(ValueError):
    """
    Invalid configuration.

    path names the offending field (e.g. ``scenario.drive.kind``); line and
    column locate JSON syntax errors.
    """

    def __init__(
        self,
        message: str,
        path: Optional[str] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ):
        self.message = message
        self.path = path
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        where = []
        if self.line is not None:
            where.append(f"line {self.line}, column {self.column}")
        if self.path:
            where.append(f"field '{self.path}'")
        prefix = f"{'; '.join(where)}: " if where else ""
        return f"{prefix}{self.message}"


@dataclass
class RunConfig:
    """
    Everything a CLI run needs.

    Example:
        config = RunConfig(scenario=preset_fig2c(), variant=Variant.APPENDIX,
                           output_path=Path("chi.csv"))
        config.dephasing.coherence_factor(2.0)
    """

    scenario: Scenario
    variant: Variant = Variant.APPENDIX
    output_path: Optional[Path] = None
    report_path: Optional[Path] = None
    checks: Tuple[str, ...] = field(default=DEFAULT_CHECKS)
    workers: int = 1
    propagator_steps: int = DEFAULT_STEPS
    duration_rule: DurationRule = DurationRule.U_ONLY
    constant_time: float = 0.0

    def __post_init__(self):
        self.checks = tuple(self.checks)
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise ConfigError(f"Unknown check(s) {unknown}; available: {', '.join(CHECKS)}", "checks")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}", "workers")
        if self.propagator_steps < 1:
            raise ConfigError(
                f"propagator_steps must be at least 1, got {self.propagator_steps}", "propagator_steps"
            )
        if self.constant_time < 0:
            raise ConfigError(
                f"constant_time must be non-negative, got {self.constant_time}",
                "dephasing.constant_time",
            )

    @property
    def dephasing(self) -> DephasingModel:
        """Dephasing model for the damped columns (rate from the scenario)."""
        return DephasingModel(self.scenario.gamma, self.duration_rule, self.constant_time)

    def with_overrides(
        self,
        cutoff: Optional[int] = None,
        variant: Optional[Variant] = None,
        output_path: Optional[Path] = None,
    ) -> "RunConfig":
        """Apply command-line overrides."""
        config = self
        if cutoff is not None:
            try:
                config = replace(config, scenario=config.scenario.with_cutoff(cutoff))
            except ValueError as e:
                raise ConfigError(str(e), "cutoff") from e
        if variant is not None:
            config = replace(config, variant=variant)
        if output_path is not None:
            config = replace(config, output_path=output_path)
        return config

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready form accepted by parse_config."""
        data: Dict[str, Any] = {
            "scenario": scenario_to_dict(self.scenario),
            "variant": self.variant.value,
            "checks": list(self.checks),
            "workers": self.workers,
            "propagator_steps": self.propagator_steps,
            "dephasing": {
                "duration_rule": self.duration_rule.value,
                "constant_time": self.constant_time,
            },
        }
        if self.output_path is not None:
            data["output_path"] = str(self.output_path)
        if self.report_path is not None:
            data["report_path"] = str(self.report_path)
        return data


def scenario_to_dict(scenario: Scenario) -> Dict[str, Any]:
    drive: Dict[str, Any] = {"kind": scenario.drive.kind.value}
    if scenario.drive.kind is DriveKind.TABULATED:
        drive["table"] = [list(p) for p in scenario.drive.table]
    else:
        drive["lambda_final"] = scenario.drive.lambda_final
        if scenario.drive.kind is DriveKind.TANH_RAMP:
            drive["ramp_rate"] = scenario.drive.ramp_rate

    data: Dict[str, Any] = {
        "omega": scenario.omega,
        "phi": scenario.phi,
        "tau": scenario.tau,
        "gamma": scenario.gamma,
        "cutoff": scenario.cutoff,
        "platform": scenario.platform.value,
        "drive": drive,
        "u_grid": list(scenario.u_grid),
    }
    if scenario.nbar is not None:
        data["nbar"] = scenario.nbar
    else:
        data["beta"] = scenario.beta
    return data
