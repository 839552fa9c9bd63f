"""
Core workprobe functionality.

Exports the linear-algebra layer and the check abstraction.
"""

from workprobe.core.check import Check, CheckResult, Measurement
from workprobe.core.linalg import EigenSystem, NotHermitianError, EigenConvergenceError

__all__ = ["Check", "CheckResult", "Measurement", "EigenSystem", "NotHermitianError", "EigenConvergenceError"]
