"""
Basin images.
"""

import io
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from PIL import Image

from ..errors import DomainError
from ..resource_manager import load_config_json
from .grid import BasinGrid

RGB = Tuple[int, int, int]
BLACK: RGB = (0, 0, 0)


@dataclass(frozen=True)
class Palette:
    """Root colours in root-index order; every negative label is black."""

    colors: Tuple[RGB, ...]
    names: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.colors:
            raise DomainError("palette needs at least one colour")
        if len(set(self.colors)) != len(self.colors):
            raise DomainError("palette colours must be distinct")
        if BLACK in self.colors:
            raise DomainError("black is reserved for non-root labels")

    @classmethod
    def default(cls) -> "Palette":
        data = load_config_json("palette.json")
        entries = data["roots"]
        return cls(
            colors=tuple(tuple(int(c) for c in e["rgb"]) for e in entries),
            names=tuple(e["name"] for e in entries),
        )

    @classmethod
    def from_colors(cls, colors: Sequence[Sequence[int]]) -> "Palette":
        return cls(colors=tuple(tuple(int(c) for c in rgb) for rgb in colors))

    def lookup_table(self, n_labels: int) -> np.ndarray:
        """(n_labels, 3) colour table, cycling through the palette."""
        return np.array([self.colors[i % len(self.colors)] for i in range(max(1, n_labels))], dtype=np.uint8)


def basin_image(grid: BasinGrid, palette: Optional[Palette] = None) -> Image.Image:
    """
    RGB image, ``nx`` wide and ``render_height`` tall, row 0 at y_max. Each
    image row shows the nearest grid row.
    """
    palette = palette or Palette.default()
    spec = grid.spec
    height = spec.render_height()
    labels = grid.labels
    table = palette.lookup_table(int(labels.max()) + 1 if labels.size else 1)

    rows = np.arange(height)
    source_rows = spec.ny - 1 - np.minimum(spec.ny - 1, (rows * spec.ny) // height)
    # (height, nx)
    picked = labels[:, source_rows].T
    rgb = np.zeros((height, spec.nx, 3), dtype=np.uint8)
    roots = picked >= 0
    rgb[roots] = table[picked[roots]]
    return Image.fromarray(rgb, "RGB")


def render_ppm(grid: BasinGrid, palette: Optional[Palette] = None) -> bytes:
    """Binary P6 bytes: ``P6\\n{w} {h}\\n255\\n`` then RGB rows top-down."""
    buffer = io.BytesIO()
    basin_image(grid, palette).save(buffer, format="PPM")
    return buffer.getvalue()


def render_png(grid: BasinGrid, palette: Optional[Palette] = None) -> bytes:
    buffer = io.BytesIO()
    basin_image(grid, palette).save(buffer, format="PNG", optimize=False)
    return buffer.getvalue()
