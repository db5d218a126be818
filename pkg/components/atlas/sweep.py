"""
Running an iterator from every cell centre of a grid.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, List, Optional, Sequence, Tuple

import mpmath

from ..dynamics import BNQNParams, UNMATCHED, classify_limit, run_method
from ..errors import DomainError, XibasinError
from ..functions import FunctionHandle
from ..logger_config import get_logger
from ..progress_worker import BatchWorker
from .grid import BasinGrid, GridSpec

logger = get_logger(__name__)

CellResult = Tuple[int, int, mpmath.mpc]


@dataclass(frozen=True)
class ColumnTask:
    handle: FunctionHandle
    grid: GridSpec
    method: str
    params: BNQNParams
    roots: Tuple[mpmath.mpc, ...]
    ix: int
    alpha: Any = None


def _sweep_column(task: ColumnTask) -> List[CellResult]:
    """Labels, iteration counts and terminals for one grid column."""
    results = []
    ctx = task.handle.ctx
    for iy in range(task.grid.ny):
        z0 = task.grid.cell_center(task.ix, iy, ctx)
        cell_index = task.ix * task.grid.ny + iy
        try:
            trajectory = run_method(task.method, task.handle, z0, task.params, index=cell_index, alpha=task.alpha)
            label = classify_limit(trajectory, task.roots, task.params.root_tol) if task.roots else UNMATCHED
            results.append((label, trajectory.iterations, trajectory.terminal))
        except XibasinError as e:
            logger.debug(f"cell ({task.ix}, {iy}) failed: {e}")
            results.append((UNMATCHED, 0, z0))
    return results


def sweep(
    h: FunctionHandle,
    grid: GridSpec,
    method: str,
    params: BNQNParams,
    roots: Sequence,
    workers: Optional[int] = 1,
    alpha=None,
    progress_callback: Optional[Callable[[int], None]] = None,
    status_callback: Optional[Callable[[str], None]] = None,
) -> BasinGrid:
    """Basin raster of ``method`` on ``grid``; failing cells become Unmatched."""
    ctx = h.ctx
    parsed = tuple(ctx.complex(r) for r in roots)
    with ctx.scope():
        for a, b in combinations(parsed, 2):
            if abs(a - b) <= 2 * params.root_tol:
                raise DomainError("roots must be separated by more than 2·root_tol")

    tasks = [ColumnTask(h, grid, method, params, parsed, ix, alpha) for ix in range(grid.nx)]
    worker = BatchWorker(
        _sweep_column, tasks, workers=workers, label=f"{method} sweep",
        progress_callback=progress_callback, status_callback=status_callback,
    )
    columns = worker.run()

    basin = BasinGrid.empty(grid)
    for ix, column in enumerate(columns):
        for iy, (label, iters, terminal) in enumerate(column):
            basin.labels[ix, iy] = label
            basin.iters[ix, iy] = iters
            basin.terminals[ix, iy] = terminal
    logger.info(f"{method} sweep on {grid.nx}x{grid.ny}: {basin.label_counts()}")
    return basin
