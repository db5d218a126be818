"""
Nearest-site rasters and raster comparison.

Distances are computed for the whole grid with numpy; cells whose two
nearest squared distances are within float resolution of each other are
re-decided with mpmath at the context's precision, and exact ties there
become boundary (Unmatched) cells.
"""

from typing import Dict, List, Optional, Sequence

import mpmath
import numpy as np

from ..dynamics import UNMATCHED
from ..errors import DomainError
from ..logger_config import get_logger
from ..numerics import PrecisionContext
from .grid import BasinGrid, GridSpec

logger = get_logger(__name__)

NEAR_TIE = 1e-9


def _exact_nearest(z: mpmath.mpc, sites: List[mpmath.mpc], candidates, ctx: PrecisionContext) -> int:
    with ctx.scope():
        distances = [(abs(z - sites[k]) ** 2, k) for k in candidates]
        distances.sort(key=lambda item: item[0])
        if len(distances) > 1 and distances[0][0] == distances[1][0]:
            return UNMATCHED
        return distances[0][1]


def voronoi_raster(
    sites: Sequence,
    grid: GridSpec,
    ctx: Optional[PrecisionContext] = None,
    extra_sites: Sequence = (),
) -> BasinGrid:
    """
    Label each cell with the index of its nearest site. Extra sites take the
    indices following the main ones.
    """
    ctx = ctx or PrecisionContext()
    all_sites = [ctx.complex(s) for s in sites] + [ctx.complex(s) for s in extra_sites]
    if not all_sites:
        raise DomainError("voronoi_raster needs at least one site")

    xs, ys = grid.axes()
    px = np.array([float(s.real) for s in all_sites])
    py = np.array([float(s.imag) for s in all_sites])
    # (nx, ny, sites)
    d2 = (xs[:, None, None] - px[None, None, :]) ** 2 + (ys[None, :, None] - py[None, None, :]) ** 2
    order = np.argsort(d2, axis=2, kind="stable")
    labels = order[:, :, 0].astype(np.int32)

    basin = BasinGrid.empty(grid)
    basin.labels = labels
    if len(all_sites) > 1:
        first = np.take_along_axis(d2, order[:, :, :1], axis=2)[:, :, 0]
        second = np.take_along_axis(d2, order[:, :, 1:2], axis=2)[:, :, 0]
        close = np.argwhere(second - first <= NEAR_TIE * np.maximum(1.0, second))
        for ix, iy in close:
            z = grid.cell_center(int(ix), int(iy), ctx)
            near = [k for k in range(len(all_sites)) if d2[ix, iy, k] - first[ix, iy] <= NEAR_TIE * max(1.0, second[ix, iy])]
            labels[ix, iy] = _exact_nearest(z, all_sites, near, ctx)
        logger.debug(f"voronoi: {len(close)} near-tie cells re-decided at {ctx.digits} digits")

    for ix in range(grid.nx):
        for iy in range(grid.ny):
            basin.terminals[ix, iy] = grid.cell_center(ix, iy, ctx)
    return basin


def collinear_midlines(sites: Sequence, ctx: Optional[PrecisionContext] = None) -> List[mpmath.mpf]:
    """
    Cell boundaries of sites sharing one real part: the midpoints of
    consecutive imaginary parts, in increasing order.
    """
    ctx = ctx or PrecisionContext()
    parsed = [ctx.complex(s) for s in sites]
    if len({s.real for s in parsed}) > 1:
        raise DomainError("sites are not on one vertical line")
    with ctx.scope():
        heights = sorted(s.imag for s in parsed)
        return [(a + b) / 2 for a, b in zip(heights, heights[1:])]


def boundary_mask(grid: BasinGrid) -> np.ndarray:
    """True where a 4-neighbour carries a different label."""
    labels = grid.labels
    mask = np.zeros(labels.shape, dtype=bool)
    dx = labels[1:, :] != labels[:-1, :]
    dy = labels[:, 1:] != labels[:, :-1]
    mask[1:, :] |= dx
    mask[:-1, :] |= dx
    mask[:, 1:] |= dy
    mask[:, :-1] |= dy
    return mask


def agreement(
    a: BasinGrid,
    b: BasinGrid,
    label_map: Optional[Dict[int, int]] = None,
    exclude: Optional[np.ndarray] = None,
) -> float:
    """
    Fraction of cells where ``label_map[a]`` equals ``b``, skipping cells
    either grid marks Unmatched and cells set in ``exclude``.
    """
    if a.spec != b.spec:
        raise DomainError("grids have different specs")
    mapped = a.labels.copy()
    if label_map:
        for source, target in label_map.items():
            mapped[a.labels == source] = target
    counted = (a.labels != UNMATCHED) & (b.labels != UNMATCHED)
    if exclude is not None:
        counted &= ~exclude
    total = int(counted.sum())
    if total == 0:
        logger.warning("agreement: no comparable cells")
        return 0.0
    return float((mapped[counted] == b.labels[counted]).sum()) / total
