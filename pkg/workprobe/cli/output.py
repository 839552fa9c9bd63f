"""
CSV and JSON writers for CLI results.

Numbers are printed with 17 significant digits so a float read back from the
file is bit-identical to the value in memory. Lines end with a bare "\\n".
"""

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

from workprobe.core.verifier import VerifyResult
from workprobe.protocol.runner import ProtocolResult
from workprobe.work.stats import WorkDistribution

CHI_HEADER = ("u", "omega_u", "re_chi", "im_chi", "re_chi_damped", "im_chi_damped", "abs_chi")
WORK_HEADER = ("W", "probability")

NORMALISATION_TOL = 1e-10

PathLike = Union[str, Path]


def format_value(x: float) -> str:
    return f"{x:.17g}"


@dataclass
class SweepRow:
    """One row of the χ table."""

    u: float
    omega_u: float
    chi: complex
    chi_damped: complex

    @property
    def abs_chi(self) -> float:
        return abs(self.chi)

    def values(self) -> List[float]:
        return [
            self.u,
            self.omega_u,
            self.chi.real,
            self.chi.imag,
            self.chi_damped.real,
            self.chi_damped.imag,
            self.abs_chi,
        ]


def sweep_rows(
    omega: float, undamped: Sequence[ProtocolResult], damped: Sequence[ProtocolResult]
) -> List[SweepRow]:
    """Pair undamped and damped results (same grid order) into rows."""
    if len(undamped) != len(damped):
        raise ValueError(f"Result lists differ in length: {len(undamped)} vs {len(damped)}")
    rows = []
    for a, b in zip(undamped, damped):
        if a.u != b.u:
            raise ValueError(f"Grid mismatch: u={a.u} vs u={b.u}")
        rows.append(SweepRow(u=a.u, omega_u=omega * a.u, chi=a.chi_readout, chi_damped=b.chi_readout))
    return rows


def _write_rows(path: PathLike, header: Sequence[str], rows: Iterable[Sequence[float]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(float(v)) for v in row])


def write_chi_csv(path: PathLike, rows: Sequence[SweepRow]) -> None:
    _write_rows(path, CHI_HEADER, (r.values() for r in rows))


def read_chi_csv(path: PathLike) -> List[SweepRow]:
    """Parse a file written by write_chi_csv."""
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader)
        if tuple(header) != CHI_HEADER:
            raise ValueError(f"Unexpected header {header}")
        rows = []
        for record in reader:
            u, omega_u, re, im, re_d, im_d, _ = (float(x) for x in record)
            rows.append(SweepRow(u=u, omega_u=omega_u, chi=complex(re, im), chi_damped=complex(re_d, im_d)))
        return rows


def write_work_csv(path: PathLike, dist: WorkDistribution) -> None:
    """
    Write W,probability rows.

    Raises:
        RuntimeError: if the probabilities do not sum to 1 within 1e-10
    """
    total = float(dist.probability.sum())
    if abs(total - 1.0) > NORMALISATION_TOL:
        raise RuntimeError(f"Work distribution is not normalised (Σp = {total!r}); nothing written")
    _write_rows(path, WORK_HEADER, dist.points)


def verify_report(result: VerifyResult, config: Dict[str, Any]) -> Dict[str, Any]:
    report = result.to_dict()
    report["config"] = config
    return report


def write_report(path: PathLike, result: VerifyResult, config: Dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(verify_report(result, config), f, indent=2)
        f.write("\n")
