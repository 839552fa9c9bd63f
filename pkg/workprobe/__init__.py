__version__ = "0.1.0"

from workprobe.core.linalg import EigenSystem, expm, hermitian_eig, kron
from workprobe.oscillator.model import DriveProfile, OscillatorSystem, Platform, Scenario
from workprobe.work.process import WorkProcess, backward_process, forward_process
from workprobe.work.stats import WorkDistribution, chi_direct, tpm_distribution
from workprobe.protocol.dephasing import DephasingModel, DurationRule
from workprobe.protocol.runner import Protocol, ProtocolResult, Variant, run_protocol
from workprobe.config import preset_fig2c, preset_trivial
from workprobe.logging import get_logger, get_probe_logger, setup_logging

"""
Foundations of workprobe:
    Scenario describes one experiment: oscillator, temperature, drive λ_t, τ, Γ and the u-grid.
    WorkProcess is a process Ĥ_i → Ĥ_f with its unitary and thermal initial state.
    WorkDistribution is the two-point-measurement work distribution P(W).
    chi_direct evaluates the characteristic function χ(u) by the trace formula.
    Protocol runs the Ramsey interferometer that reads χ(u) off an ancilla qubit.
    DephasingModel damps the ancilla coherences during the conditional gates.
"""

__all__ = [
    "DephasingModel",
    "DriveProfile",
    "DurationRule",
    "EigenSystem",
    "OscillatorSystem",
    "Platform",
    "Protocol",
    "ProtocolResult",
    "Scenario",
    "Variant",
    "WorkDistribution",
    "WorkProcess",
    "backward_process",
    "chi_direct",
    "expm",
    "forward_process",
    "get_logger",
    "get_probe_logger",
    "hermitian_eig",
    "kron",
    "run_protocol",
    "preset_fig2c",
    "preset_trivial",
    "setup_logging",
    "tpm_distribution",
]
