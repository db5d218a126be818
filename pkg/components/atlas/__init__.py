from .grid import BasinGrid, GridSpec, grid_csv, read_grid_csv, write_grid_csv
from .render import Palette, basin_image, render_png, render_ppm
from .sweep import sweep
from .voronoi import agreement, boundary_mask, collinear_midlines, voronoi_raster

__all__ = [
    'BasinGrid',
    'GridSpec',
    'Palette',
    'agreement',
    'basin_image',
    'boundary_mask',
    'collinear_midlines',
    'grid_csv',
    'read_grid_csv',
    'render_png',
    'render_ppm',
    'sweep',
    'voronoi_raster',
    'write_grid_csv',
]
