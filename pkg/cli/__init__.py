"""Command-line surface: run configs, presets, reports and the click commands."""

from .run_config import RunConfig, format_config, load_config, parse_config

__all__ = [
    'RunConfig',
    'format_config',
    'load_config',
    'parse_config',
]
