"""
Core check abstraction for workprobe.

Every verification (Jarzynski, Crooks, route equivalence, ...) inherits from
Check and follows the Measure → Evaluate pattern:
1. Measure: compute a residual against an independent oracle
2. Evaluate: compare the residual with the check's tolerance
"""

import math
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, Optional

if TYPE_CHECKING:
    from workprobe.checks.context import CheckContext


@dataclass
class Measurement:
    """
    Raw outcome of a check.

    passed, when set, overrides the plain residual ≤ tolerance rule
    (checks with several tolerances decide for themselves).
    """

    residual: float
    details: Dict[str, Any] = field(default_factory=dict)
    passed: Optional[bool] = None


@dataclass
class CheckResult:
    """Evaluated check: what was measured, against what, and the verdict."""

    name: str
    residual: float
    tolerance: float
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    duration: float = 0.0

    def __str__(self):
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {verdict} (residual {self.residual:.3e}, tolerance {self.tolerance:.1e})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "residual": _json_float(self.residual),
            "tolerance": self.tolerance,
            "passed": self.passed,
            "duration": self.duration,
            "details": {k: _json_value(v) for k, v in self.details.items()},
        }


class Check(ABC):
    """
    Base class for all verifications.

    Subclasses set ``name`` and ``default_tolerance`` and implement measure().
    """

    name: str = ""
    default_tolerance: float = 1e-8
    description: str = ""

    def __init__(self, tolerance: Optional[float] = None):
        """
        Initialize check.

        Args:
            tolerance: Pass threshold for the residual (class default if None)
        """
        self.tolerance = self.default_tolerance if tolerance is None else tolerance

    @property
    def id(self) -> str:
        """Unique check identifier, e.g. check:jarzynski."""
        return f"check:{self.name}"

    @abstractmethod
    def measure(self, context: "CheckContext") -> Measurement:
        """
        Compute the residual of this check.

        Args:
            context: Shared scenario data (processes, spectra, grids)

        Returns:
            Measurement with the residual and diagnostic details
        """
        pass

    def evaluate(self, context: "CheckContext") -> CheckResult:
        """
        Measure and compare against the tolerance.

        A non-finite residual always fails.
        """
        start = time.time()
        m = self.measure(context)
        if m.passed is None:
            passed = math.isfinite(m.residual) and m.residual <= self.tolerance
        else:
            passed = m.passed and math.isfinite(m.residual)
        return CheckResult(
            name=self.name,
            residual=float(m.residual),
            tolerance=self.tolerance,
            passed=bool(passed),
            details=m.details,
            duration=time.time() - start,
        )

    def __repr__(self):
        return f"{self.__class__.__name__}(tolerance={self.tolerance!r})"

    def __str__(self):
        return self.id


def _json_float(x: float) -> Any:
    # JSON has no inf/nan
    return x if math.isfinite(x) else str(x)


def _json_value(v: Any) -> Any:
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, complex):
        return {"re": _json_float(v.real), "im": _json_float(v.imag)}
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        return _json_float(v)
    try:
        return _json_float(float(v))
    except (TypeError, ValueError):
        return str(v)
