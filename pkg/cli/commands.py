"""
Command-line entry point.

    xibasin solve      --config FILE [--seed N] [--out DIR] [--allow-long]
    xibasin basins     --config FILE ...
    xibasin voronoi    --config FILE ...
    xibasin verify     --config FILE ...
    xibasin experiment NAME [--config FILE] ...

Exit codes: 0 success, 1 run failure, 2 config error, 3 gated run refused.
"""

import sys
from pathlib import Path
from typing import Callable, Optional, Tuple

import click

from components.errors import ConfigError, GatedRunError, XibasinError
from components.logger_config import get_logger, log_system_info, setup_logging

from .presets import load_preset, preset_names
from .reports import OutputDirectory
from .run_config import RunConfig, load_config
from .runs import RUNNERS

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_GATED = 3

logger = get_logger(__name__)


def _resolve(config_path: Optional[str], base: Optional[RunConfig], seed: Optional[int],
             out: Optional[str], workers: Optional[int], allow_long: bool) -> RunConfig:
    config = load_config(config_path, base) if config_path else (base or RunConfig())
    config = config.with_overrides(seed=seed, out=out, workers=workers)
    config.check_gate(allow_long)
    return config


def _execute(build: Callable[[], Tuple[str, RunConfig]], debug: bool) -> int:
    """Resolve the run kind and config, run it and map errors onto exit codes."""
    try:
        kind, config = build()
    except ConfigError as e:
        click.echo(f"config error: {e}", err=True)
        return EXIT_CONFIG
    except GatedRunError as e:
        click.echo(f"{e} (pass --allow-long to run it)", err=True)
        return EXIT_GATED

    if debug:
        log_file = setup_logging(debug_mode=True, log_dir=str(Path(config.out) / "logs"))
        log_system_info()
        logger.info(f"Debug log: {log_file}")

    try:
        out = OutputDirectory(config.out)
        code = RUNNERS[kind](config, out)
    except ConfigError as e:
        click.echo(f"config error: {e}", err=True)
        return EXIT_CONFIG
    except XibasinError as e:
        logger.error(f"{kind} failed: {e}")
        click.echo(f"{kind} failed: {e}", err=True)
        return EXIT_FAILURE
    except KeyboardInterrupt:
        click.echo("interrupted", err=True)
        return EXIT_FAILURE

    click.echo(f"{kind}: wrote {len(out.files)} files to {out.path}")
    return code


def _common(func):
    func = click.option("--debug", is_flag=True, help="Write a debug log under OUT/logs.")(func)
    func = click.option("--workers", type=click.IntRange(min=0), default=None,
                        help="Worker processes; 0 uses every physical core.")(func)
    func = click.option("--allow-long", is_flag=True, help="Permit runs above height 1e4.")(func)
    func = click.option("--out", type=click.Path(file_okay=False), default=None, help="Output directory.")(func)
    func = click.option("--seed", type=click.IntRange(min=0), default=None, help="Random seed.")(func)
    return func


@click.group()
@click.version_option(package_name="xibasin")
def main():
    """Basins of attraction and root finding for ξ, H_t, polynomials and sin."""
    setup_logging(debug_mode=False)


def _command(kind: str, help_text: str):
    @main.command(name=kind, help=help_text)
    @click.option("--config", "config_path", type=click.Path(dir_okay=False), required=True,
                  help="key=value run configuration.")
    @_common
    def command(config_path, seed, out, allow_long, workers, debug):
        code = _execute(lambda: (kind, _resolve(config_path, None, seed, out, workers, allow_long)), debug)
        sys.exit(code)
    return command


solve = _command("solve", "Run the configured method from each seed point.")
basins = _command("basins", "Sweep a grid and render the basins of every configured method.")
voronoi = _command("voronoi", "Rasterize the nearest-root partition of the configured roots.")
verify = _command("verify", "Bracket critical-line zeros and count zeros in a rectangle.")


@main.command(help="Run a named preset; --config entries override it.")
@click.argument("name")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="key=value overrides applied on top of the preset.")
@_common
def experiment(name, config_path, seed, out, allow_long, workers, debug):
    def build() -> Tuple[str, RunConfig]:
        preset = load_preset(name.lower())
        return preset.kind, _resolve(config_path, preset.config, seed, out, workers, allow_long)

    sys.exit(_execute(build, debug))


@main.command(name="presets", help="List the bundled experiment presets.")
def list_presets():
    for name in preset_names():
        preset = load_preset(name)
        click.echo(f"{name:12s} {preset.kind:7s} {preset.description}")


if __name__ == "__main__":
    main()
