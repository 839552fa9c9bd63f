"""
Verification checks.

Every check is registered here by name; build_checks() turns the names of a
run configuration into check instances in run order.
"""

from typing import Dict, List, Sequence, Type

from workprobe.checks.context import CheckContext
from workprobe.checks.cutoff import CutoffDoublingCheck
from workprobe.checks.decomposition import DecompositionCheck
from workprobe.checks.dephasing import DephasingEnvelopeCheck
from workprobe.checks.fluctuation import CrooksCheck, DissipatedWorkCheck, JarzynskiCheck
from workprobe.checks.propagator import PropagatorCheck
from workprobe.checks.routes import RouteEquivalenceCheck
from workprobe.core.check import Check

CHECKS: Dict[str, Type[Check]] = {
    cls.name: cls
    for cls in (
        JarzynskiCheck,
        CrooksCheck,
        RouteEquivalenceCheck,
        DecompositionCheck,
        PropagatorCheck,
        CutoffDoublingCheck,
        DephasingEnvelopeCheck,
        DissipatedWorkCheck,
    )
}

DEFAULT_CHECKS = tuple(CHECKS)


def build_checks(names: Sequence[str]) -> List[Check]:
    """
    Instantiate checks by name.

    Raises:
        ValueError: for an unknown name
    """
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"Unknown check(s) {unknown}; available: {', '.join(CHECKS)}")
    return [CHECKS[n]() for n in names]


__all__ = [
    "CHECKS",
    "DEFAULT_CHECKS",
    "CheckContext",
    "CrooksCheck",
    "CutoffDoublingCheck",
    "DecompositionCheck",
    "DephasingEnvelopeCheck",
    "DissipatedWorkCheck",
    "JarzynskiCheck",
    "PropagatorCheck",
    "RouteEquivalenceCheck",
    "build_checks",
]
