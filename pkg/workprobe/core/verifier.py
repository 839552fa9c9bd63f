"""
Verifier - runs checks and collects their verdicts.

The verifier:
1. Collects checks (last registration of a name wins)
2. Evaluates them in registration order against one context
3. Records failures and errors without stopping
4. Produces a machine-readable report
"""

import json
import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, List, Optional

from workprobe.core.check import Check, CheckResult
from workprobe.logging import get_probe_logger

if TYPE_CHECKING:
    from workprobe.checks.context import CheckContext

logger = get_probe_logger(__name__)


@dataclass
class VerifyResult:
    """
    Result of a verification run.

    errors maps a check name to the exception it raised; such checks count
    as failed.
    """

    results: Dict[str, CheckResult] = field(default_factory=dict)
    errors: Dict[str, Exception] = field(default_factory=dict)
    duration: float = 0.0

    @property
    def failed_count(self) -> int:
        """Checks that failed or raised."""
        return sum(1 for r in self.results.values() if not r.passed) + len(self.errors)

    @property
    def passed(self) -> bool:
        """True iff every check ran and passed."""
        return self.failed_count == 0

    @property
    def has_errors(self) -> bool:
        return len(self.errors) > 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "failed_count": self.failed_count,
            "duration": self.duration,
            "checks": [r.to_dict() for r in self.results.values()],
            "errors": [
                {"name": name, "type": type(e).__name__, "message": str(e)}
                for name, e in self.errors.items()
            ],
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


class Verifier:
    """
    Check runner implementing the register/verify workflow.

    Example:
        verifier = Verifier()
        verifier.add(JarzynskiCheck())
        verifier.add(CrooksCheck())

        result = verifier.verify(CheckContext(scenario))
        print(f"{result.failed_count} checks failed")
    """

    def __init__(self):
        self.checks: List[Check] = []
        self._registry: Dict[str, Check] = {}

    def add(self, check: Check) -> Check:
        """
        Register a check.

        A check with an already registered name replaces the earlier one in
        place, keeping its position in the run order.

        Returns:
            The check (for chaining)
        """
        if check.name in self._registry:
            for i, existing in enumerate(self.checks):
                if existing.name == check.name:
                    self.checks[i] = check
                    break
        else:
            self.checks.append(check)

        self._registry[check.name] = check
        return check

    def get(self, name: str) -> Optional[Check]:
        """Get check by name."""
        return self._registry.get(name)

    def verify(self, context: "CheckContext") -> VerifyResult:
        """
        Evaluate every registered check.

        Args:
            context: Shared scenario data

        Returns:
            VerifyResult with per-check results and any errors
        """
        result = VerifyResult()
        start_time = time.time()

        for check in self.checks:
            try:
                outcome = check.evaluate(context)
                result.results[check.name] = outcome
                logger.debug(str(outcome))
            except Exception as e:
                result.errors[check.name] = e
                logger.error(f"{check.name}: {type(e).__name__}: {e}")
                # Continue with other checks even if one fails

        result.duration = time.time() - start_time
        return result

    def clear(self) -> None:
        """Remove all checks."""
        self.checks.clear()
        self._registry.clear()
