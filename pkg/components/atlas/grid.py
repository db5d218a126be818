"""
Grid geometry and basin rasters.
"""

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, TextIO, Tuple, Union

import mpmath
import numpy as np

from ..errors import DomainError
from ..numerics import PrecisionContext

CSV_COLUMNS = ("ix", "iy", "x", "y", "label", "iters", "term_x", "term_y")


@dataclass(frozen=True)
class GridSpec:
    """
    nx × ny cell centres on [x_min, x_max] × [y_min, y_max].

    y_render_scale stretches rows in rendered images only; the coordinates
    handed to the iterators are never rescaled.
    """

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int
    y_render_scale: float = 1.0

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise DomainError("x_min must be below x_max")
        if not self.y_min < self.y_max:
            raise DomainError("y_min must be below y_max")
        if self.nx < 1 or self.ny < 1:
            raise DomainError("nx and ny must be positive")
        if not self.y_render_scale > 0:
            raise DomainError("y_render_scale must be positive")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nx, self.ny

    @property
    def cells(self) -> int:
        return self.nx * self.ny

    def cell_center(self, ix: int, iy: int, ctx: PrecisionContext) -> mpmath.mpc:
        with ctx.scope():
            x0, x1 = mpmath.mpf(self.x_min), mpmath.mpf(self.x_max)
            y0, y1 = mpmath.mpf(self.y_min), mpmath.mpf(self.y_max)
            x = x0 + (ix + mpmath.mpf(0.5)) * (x1 - x0) / self.nx
            y = y0 + (iy + mpmath.mpf(0.5)) * (y1 - y0) / self.ny
            return mpmath.mpc(x, y)

    def axes(self) -> Tuple[np.ndarray, np.ndarray]:
        """Cell-centre coordinates along x and y as float arrays."""
        xs = self.x_min + (np.arange(self.nx) + 0.5) * (self.x_max - self.x_min) / self.nx
        ys = self.y_min + (np.arange(self.ny) + 0.5) * (self.y_max - self.y_min) / self.ny
        return xs, ys

    def render_height(self) -> int:
        """Image rows: the window's aspect with y scaled by y_render_scale, at nx columns."""
        width = self.x_max - self.x_min
        height = (self.y_max - self.y_min) * self.y_render_scale
        return max(1, int(round(height * self.nx / width)))


@dataclass
class BasinGrid:
    """Per-cell labels, iteration counts and terminal points, indexed [ix, iy]."""

    spec: GridSpec
    labels: np.ndarray
    iters: np.ndarray
    terminals: np.ndarray

    @classmethod
    def empty(cls, spec: GridSpec) -> "BasinGrid":
        terminals = np.empty(spec.shape, dtype=object)
        terminals.fill(mpmath.mpc(0))
        return cls(
            spec=spec,
            labels=np.full(spec.shape, -3, dtype=np.int32),
            iters=np.zeros(spec.shape, dtype=np.int32),
            terminals=terminals,
        )

    def label_counts(self) -> dict:
        values, counts = np.unique(self.labels, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def same_as(self, other: "BasinGrid") -> bool:
        return (
            self.spec == other.spec
            and np.array_equal(self.labels, other.labels)
            and np.array_equal(self.iters, other.iters)
            and all(a == b for a, b in zip(self.terminals.flat, other.terminals.flat))
        )


def write_grid_csv(grid: BasinGrid, target: Union[str, Path, TextIO], ctx: PrecisionContext) -> None:
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="") as stream:
            write_grid_csv(grid, stream, ctx)
        return
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    spec = grid.spec
    for iy in range(spec.ny):
        for ix in range(spec.nx):
            center = spec.cell_center(ix, iy, ctx)
            term = grid.terminals[ix, iy]
            writer.writerow([
                ix, iy,
                mpmath.nstr(center.real, 17), mpmath.nstr(center.imag, 17),
                int(grid.labels[ix, iy]), int(grid.iters[ix, iy]),
                mpmath.nstr(term.real, 20), mpmath.nstr(term.imag, 20),
            ])


def grid_csv(grid: BasinGrid, ctx: PrecisionContext) -> str:
    buffer = io.StringIO()
    write_grid_csv(grid, buffer, ctx)
    return buffer.getvalue()


def read_grid_csv(source: Union[str, Path, TextIO], spec: GridSpec, ctx: Optional[PrecisionContext] = None) -> BasinGrid:
    """Rebuild a BasinGrid over ``spec`` from its CSV form."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8", newline="") as stream:
            return read_grid_csv(stream, spec, ctx)
    ctx = ctx or PrecisionContext()
    reader = csv.DictReader(source)
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise DomainError(f"unexpected basin columns: {reader.fieldnames}")
    grid = BasinGrid.empty(spec)
    seen = 0
    with ctx.scope():
        for row in reader:
            ix, iy = int(row["ix"]), int(row["iy"])
            if not (0 <= ix < spec.nx and 0 <= iy < spec.ny):
                raise DomainError(f"cell ({ix}, {iy}) outside a {spec.nx}x{spec.ny} grid")
            grid.labels[ix, iy] = int(row["label"])
            grid.iters[ix, iy] = int(row["iters"])
            grid.terminals[ix, iy] = mpmath.mpc(mpmath.mpf(row["term_x"]), mpmath.mpf(row["term_y"]))
            seen += 1
    if seen != spec.cells:
        raise DomainError(f"basin CSV holds {seen} cells, grid expects {spec.cells}")
    return grid
