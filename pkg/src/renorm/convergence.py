"""
Convergence experiments: distance of Pi_n(t) to exp(tA) over a grid of n
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from matcore import Matrix, as_complex, mat_exp, mat_norm
from renorm.products import product
from sequences import MatrixSequence, cesaro_mean
from utils.error_handling import InvalidParameterError

logger = logging.getLogger(__name__)

RECORD_COLUMNS = ["n", "t_re", "t_im", "err", "mean_err", "seconds"]


@dataclass(frozen=True)
class ConvergenceRecord:
    """One grid point of a convergence scan"""

    n: int
    t: complex
    err: float
    mean_err: float
    seconds: float

    def __post_init__(self) -> None:
        if self.err < 0 or self.mean_err < 0:
            raise InvalidParameterError("errors must be nonnegative")

    def to_row(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "t_re": self.t.real,
            "t_im": self.t.imag,
            "err": self.err,
            "mean_err": self.mean_err,
            "seconds": self.seconds,
        }

    @classmethod
    def from_row(cls, row: Dict[str, Any]) -> "ConvergenceRecord":
        return cls(
            n=int(row["n"]),
            t=complex(float(row["t_re"]), float(row["t_im"])),
            err=float(row["err"]),
            mean_err=float(row["mean_err"]),
            seconds=float(row["seconds"]),
        )


def records_to_frame(records: Sequence[ConvergenceRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.to_row() for r in records], columns=RECORD_COLUMNS)


def records_from_frame(frame: pd.DataFrame) -> List[ConvergenceRecord]:
    missing = [c for c in RECORD_COLUMNS if c not in frame.columns]
    if missing:
        raise InvalidParameterError(f"record table is missing columns {missing}")
    return [ConvergenceRecord.from_row(row) for row in frame.to_dict("records")]


def _check_grid(n_grid: Sequence[int]) -> List[int]:
    grid = [int(n) for n in n_grid]
    if not grid:
        raise InvalidParameterError("n_grid must not be empty")
    if grid[0] < 1 or any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidParameterError(f"n_grid must be positive and ascending, got {grid}")
    return grid


def convergence_scan(
    seq: MatrixSequence,
    t: complex,
    n_grid: Sequence[int],
    mean: Optional[Matrix] = None,
    workers: int = 1,
) -> List[ConvergenceRecord]:
    """
    Measure ||Pi_n(t) - exp(t * mean)||_F and ||cesaro_n - mean||_F for each n

    Args:
        seq: Matrix sequence
        t: Complex time parameter
        n_grid: Ascending counts
        mean: Limit of the Cesàro means; estimated at max(n_grid) when omitted
        workers: Grid points evaluated concurrently
    """
    grid = _check_grid(n_grid)
    t = as_complex(t)
    shared = seq.materialized(grid[-1])

    if mean is None:
        mean = cesaro_mean(shared, grid[-1])
        logger.info("Estimated the mean from the Cesàro mean at n=%d", grid[-1])
    target = mat_exp(mean * t)

    def measure(n: int) -> ConvergenceRecord:
        start = time.perf_counter()
        result = product(shared, n, t)
        seconds = time.perf_counter() - start
        return ConvergenceRecord(
            n=n,
            t=t,
            err=mat_norm(result.value - target),
            mean_err=mat_norm(result.cesaro - mean),
            seconds=seconds,
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            records = list(executor.map(measure, grid))
    else:
        records = [measure(n) for n in grid]

    for record in records:
        logger.debug("n=%d err=%.3e mean_err=%.3e", record.n, record.err, record.mean_err)
    return records
