"""
Iteration records, trajectories and their CSV form.
"""

import csv
import io
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import List, Optional, TextIO, Union

import mpmath

from ..numerics import PrecisionContext

CSV_COLUMNS = ("iter", "x", "y", "F", "grad_norm", "delta_index", "gamma", "halvings")


class Outcome(str, Enum):
    CONVERGED_ROOT = "ConvergedRoot"
    CONVERGED_CRITICAL = "ConvergedCritical"
    DIVERGED = "Diverged"
    MAX_ITER = "MaxIter"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class IterationRecord:
    """
    State z_k and the step taken from it. The terminal record of a
    trajectory carries delta_index -1 and gamma 0.
    """

    index: int
    z: mpmath.mpc
    F: mpmath.mpf
    grad_norm: mpmath.mpf
    delta_index: int = -1
    gamma: mpmath.mpf = mpmath.mpf(0)
    halvings: int = 0
    # step diagnostics, not serialized
    descent: Optional[mpmath.mpf] = None
    min_spectrum: Optional[mpmath.mpf] = None
    kappa_scale: Optional[mpmath.mpf] = None
    step_norm: Optional[mpmath.mpf] = None


@dataclass
class Trajectory:
    records: List[IterationRecord] = field(default_factory=list)
    outcome: Outcome = Outcome.MAX_ITER
    terminal: mpmath.mpc = mpmath.mpc(0)
    method: str = "bnqn"
    failure: Optional[str] = None

    @property
    def iterations(self) -> int:
        """Steps taken (the terminal record is not a step)."""
        return max(0, len(self.records) - 1)

    @property
    def steps(self) -> List[IterationRecord]:
        return self.records[:-1] if self.records else []

    def points(self) -> List[mpmath.mpc]:
        return [r.z for r in self.records]


def _fmt(value, digits: int) -> str:
    return mpmath.nstr(value, digits, strip_zeros=False) if value is not None else ""


def write_csv(trajectory: Trajectory, target: Union[str, Path, TextIO], digits: int = 30) -> None:
    """Write ``iter,x,y,F,grad_norm,delta_index,gamma,halvings`` rows."""
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="") as stream:
            write_csv(trajectory, stream, digits)
        return
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in trajectory.records:
        writer.writerow([
            r.index,
            _fmt(r.z.real, digits),
            _fmt(r.z.imag, digits),
            _fmt(r.F, 20),
            _fmt(r.grad_norm, 20),
            r.delta_index,
            _fmt(r.gamma, 20),
            r.halvings,
        ])


def trajectory_csv(trajectory: Trajectory, digits: int = 30) -> str:
    buffer = io.StringIO()
    write_csv(trajectory, buffer, digits)
    return buffer.getvalue()


def read_csv(source: Union[str, Path, TextIO], ctx: PrecisionContext) -> List[IterationRecord]:
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8", newline="") as stream:
            return read_csv(stream, ctx)
    reader = csv.DictReader(source)
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected trajectory columns: {reader.fieldnames}")
    records = []
    with ctx.scope():
        for row in reader:
            records.append(IterationRecord(
                index=int(row["iter"]),
                z=mpmath.mpc(mpmath.mpf(row["x"]), mpmath.mpf(row["y"])),
                F=mpmath.mpf(row["F"]),
                grad_norm=mpmath.mpf(row["grad_norm"]),
                delta_index=int(row["delta_index"]),
                gamma=mpmath.mpf(row["gamma"]),
                halvings=int(row["halvings"]),
            ))
    return records
