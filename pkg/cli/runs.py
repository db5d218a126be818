"""
Building engine objects from a RunConfig and running each command.

Every runner takes the resolved config and an OutputDirectory, writes its
files once all computation has finished, and returns an exit code.
"""

import math
from dataclasses import dataclass, replace
from typing import List, Tuple

import mpmath

from components.atlas import (
    GridSpec,
    Palette,
    agreement,
    boundary_mask,
    collinear_midlines,
    read_grid_csv,
    render_ppm,
    sweep,
    voronoi_raster,
    write_grid_csv,
)
from components.dynamics import (
    BNQNParams,
    Outcome,
    default_deltas,
    label_name,
    run_method,
    write_csv,
)
from components.errors import ConfigError, DomainError, XibasinError
from components.functions import (
    FunctionHandle,
    HeatFlowSpec,
    PolynomialSpec,
    first_xi_roots,
    ht_handle,
    poly_handle,
    sin_handle,
    xi_derivative_handle,
    xi_handle,
)
from components.logger_config import get_logger
from components.numerics import PrecisionContext
from components.progress_worker import BatchWorker
from components.verify import (
    Rect,
    SeedScanSettings,
    count_zeros_rect,
    seed_scan,
    sign_scan,
    verify_root_near,
)

from .reports import OutputDirectory, RunReport, output_stem
from .run_config import RunConfig

logger = get_logger(__name__)

TRAJECTORY_DIGITS = 30
DISTINCT_ROOT_TOL = 1e-5


@dataclass(frozen=True)
class RunSetup:
    config: RunConfig
    ctx: PrecisionContext
    handle: FunctionHandle
    params: BNQNParams
    roots: Tuple[mpmath.mpc, ...]


def _nstr(value, digits: int = 20) -> str:
    return mpmath.nstr(value, digits)


def make_handle(cfg: RunConfig, ctx: PrecisionContext) -> FunctionHandle:
    if cfg.function == "poly":
        return poly_handle(PolynomialSpec(roots=cfg.roots, coefficients=cfg.coefficients), ctx)
    if cfg.function == "sin":
        return sin_handle(ctx)
    if cfg.function == "xi":
        return xi_handle(ctx)
    if cfg.function == "xi-derivative":
        return xi_derivative_handle(cfg.derivative_order, ctx)
    spec = HeatFlowSpec.for_digits(cfg.heat_t, ctx.digits, cfg.quadrature_nodes)
    if cfg.series_terms is not None:
        spec = replace(spec, series_terms=cfg.series_terms)
    if cfg.upper_cutoff is not None:
        spec = replace(spec, upper_cutoff=cfg.upper_cutoff)
    return ht_handle(spec, ctx)


def make_params(cfg: RunConfig) -> BNQNParams:
    return BNQNParams(
        deltas=cfg.deltas if cfg.deltas is not None else default_deltas(cfg.seed),
        theta=cfg.theta,
        tau=cfg.tau,
        gamma0=cfg.gamma0,
        max_iter=cfg.max_iter,
        grad_tol=cfg.grad_tol,
        max_halvings=cfg.max_halvings,
        root_tol=cfg.root_tol,
        seed=cfg.seed,
    )


def make_grid(cfg: RunConfig) -> GridSpec:
    return GridSpec(cfg.x_min, cfg.x_max, cfg.y_min, cfg.y_max, cfg.nx, cfg.ny, cfg.y_render_scale)


def classification_roots(cfg: RunConfig, ctx: PrecisionContext) -> Tuple[mpmath.mpc, ...]:
    """
    Roots used as labels: the configured list, the zeros of a polynomial
    given by coefficients, the multiples of π inside the window for sin, and
    the first eight zeros for ξ.
    """
    if cfg.roots:
        return tuple(ctx.complex(r) for r in cfg.roots)
    with ctx.scope():
        if cfg.function == "poly" and cfg.coefficients:
            coefficients = [ctx.complex(c) for c in cfg.coefficients]
            found = mpmath.polyroots(coefficients, maxsteps=200, extraprec=4 * ctx.working_digits)
            return tuple(sorted((mpmath.mpc(r) for r in found), key=lambda z: (z.real, z.imag)))
        if cfg.function == "sin" and cfg.y_min < 0 < cfg.y_max:
            k_lo = math.ceil(cfg.x_min / math.pi)
            k_hi = math.floor(cfg.x_max / math.pi)
            return tuple(mpmath.mpc(k * mpmath.pi) for k in range(k_lo, k_hi + 1))
        if cfg.function == "xi":
            return tuple(ctx.complex(r) for r in first_xi_roots(8))
    return ()


def build_setup(cfg: RunConfig) -> RunSetup:
    """Engine objects for ``cfg``; invalid combinations become config errors."""
    try:
        ctx = PrecisionContext(cfg.digits, cfg.guard_digits)
        return RunSetup(cfg, ctx, make_handle(cfg, ctx), make_params(cfg), classification_roots(cfg, ctx))
    except DomainError as e:
        raise ConfigError(str(e)) from e


def _match_distinct(found: List[mpmath.mpc], z) -> int:
    for i, r in enumerate(found):
        if abs(z - r) <= DISTINCT_ROOT_TOL:
            return i
    found.append(z)
    return len(found) - 1


def _solve_task(task):
    handle, params, method, z0, index, alpha = task
    try:
        return run_method(method, handle, z0, params, index=index, alpha=alpha), None
    except XibasinError as e:
        return None, str(e)


def _initial_points(cfg: RunConfig, ctx: PrecisionContext) -> List[mpmath.mpc]:
    if cfg.seeds:
        return [ctx.complex(p) for p in cfg.seeds]
    if cfg.seed_height is not None:
        with ctx.scope():
            T, spacing = mpmath.mpf(cfg.seed_height), mpmath.mpf(cfg.seed_spacing)
            return [mpmath.mpc(0, T + j * spacing) for j in range(cfg.seed_count)]
    raise ConfigError("solve needs seeds or seed_height", key="seeds")


def run_solve(cfg: RunConfig, out: OutputDirectory) -> int:
    setup = build_setup(cfg)
    ctx, h = setup.ctx, setup.handle
    points = _initial_points(cfg, ctx)
    tasks = [(h, setup.params, cfg.method, z0, i, cfg.alpha) for i, z0 in enumerate(points)]
    results = BatchWorker(_solve_task, tasks, workers=cfg.workers, label="solve",
                          status_callback=logger.info).run()

    rows, distinct, failures = [], [], 0
    for i, (z0, (trajectory, error)) in enumerate(zip(points, results)):
        if trajectory is None:
            failures += 1
            rows.append([i, _nstr(z0.real), _nstr(z0.imag), "", "", f"Failed: {error}", 0, "", ""])
            continue
        write_csv(trajectory, out.file(f"trajectory_{i:03d}.csv"), TRAJECTORY_DIGITS)
        out.files.append(out.file(f"trajectory_{i:03d}.csv"))
        root_index, verified = "", ""
        if trajectory.outcome == Outcome.CONVERGED_ROOT:
            with ctx.scope():
                root_index = _match_distinct(distinct, trajectory.terminal)
            if cfg.function == "xi":
                verified = "true" if verify_root_near(trajectory.terminal, cfg.verify_radius, ctx) else "false"
        rows.append([
            i, _nstr(z0.real), _nstr(z0.imag),
            _nstr(trajectory.terminal.real, 25), _nstr(trajectory.terminal.imag, 25),
            trajectory.outcome.value, trajectory.iterations, root_index, verified,
        ])

    header = ["index", "x0", "y0", "term_x", "term_y", "outcome", "iterations", "root", "verified"]
    out.write_csv("summary.csv", header, rows)
    report = RunReport(f"xibasin solve: {h.evaluator.describe()}")
    report.field("method", cfg.method).field("digits", ctx.digits).field("deltas", setup.params.deltas)
    report.field("seeds", len(points)).field("failed", failures).field("distinct roots", len(distinct))
    report.section("Trajectories").table(header, rows)
    if distinct:
        report.section("Distinct roots")
        report.table(["root", "x", "y"], [[i, _nstr(r.real, 25), _nstr(r.imag, 25)] for i, r in enumerate(distinct)])
    report.write(out, cfg)
    out.write_config(cfg)
    return 1 if failures else 0


def _render(out: OutputDirectory, stem: str, grid, ctx, palette):
    out.write_bytes(f"{stem}.ppm", render_ppm(grid, palette))
    write_grid_csv(grid, out.file(f"{stem}.csv"), ctx)
    out.files.append(out.file(f"{stem}.csv"))


def run_basins(cfg: RunConfig, out: OutputDirectory) -> int:
    setup = build_setup(cfg)
    try:
        spec = make_grid(cfg)
    except DomainError as e:
        raise ConfigError(str(e), key="nx") from e
    ctx, palette = setup.ctx, Palette.default()
    methods = list(dict.fromkeys([cfg.method, *cfg.comparators]))

    grids = {}
    for method in methods:
        grids[method] = sweep(setup.handle, spec, method, setup.params, setup.roots,
                              workers=cfg.workers, alpha=cfg.alpha, status_callback=logger.info)

    report = RunReport(f"xibasin basins: {setup.handle.evaluator.describe()}")
    report.field("window", f"[{cfg.x_min}, {cfg.x_max}] x [{cfg.y_min}, {cfg.y_max}]")
    report.field("grid", f"{cfg.nx} x {cfg.ny}").field("digits", ctx.digits)
    report.field("deltas", setup.params.deltas).field("roots", len(setup.roots))

    voronoi = voronoi_raster(setup.roots, spec, ctx) if setup.roots else None
    for method, grid in grids.items():
        _render(out, output_stem("basins", method), grid, ctx, palette)
        report.section(f"Method {method}")
        counts = grid.label_counts()
        report.table(["label", "cells"], [[label_name(k), counts[k]] for k in sorted(counts)])
        empty = [i for i in range(len(setup.roots)) if i not in counts]
        report.field("empty basins", ",".join(map(str, empty)) if empty else "none")
        report.field("mean iterations", f"{float(grid.iters.mean()):.3f}")
        if voronoi is not None:
            mask = boundary_mask(voronoi) | boundary_mask(grid)
            report.field("voronoi agreement", f"{agreement(grid, voronoi):.6f}")
            report.field("voronoi agreement (boundary cells excluded)", f"{agreement(grid, voronoi, exclude=mask):.6f}")

    if voronoi is not None and cfg.voronoi_render:
        _render(out, "voronoi", voronoi, ctx, palette)
    report.write(out, cfg)
    out.write_config(cfg)
    return 0


def run_voronoi(cfg: RunConfig, out: OutputDirectory) -> int:
    ctx = PrecisionContext(cfg.digits, cfg.guard_digits)
    sites = classification_roots(cfg, ctx)
    if not sites:
        raise ConfigError("voronoi needs roots", key="roots")
    try:
        spec = make_grid(cfg)
    except DomainError as e:
        raise ConfigError(str(e), key="nx") from e
    palette = Palette.default()
    grid = voronoi_raster(sites, spec, ctx)
    _render(out, "voronoi", grid, ctx, palette)

    report = RunReport("xibasin voronoi")
    report.field("sites", len(sites)).field("grid", f"{cfg.nx} x {cfg.ny}")
    counts = grid.label_counts()
    report.table(["label", "cells"], [[label_name(k), counts[k]] for k in sorted(counts)])
    if len({s.real for s in sites}) == 1:
        report.field("midlines", ", ".join(_nstr(m, 15) for m in collinear_midlines(sites, ctx)))
    if cfg.extra_sites:
        extended = voronoi_raster(sites, spec, ctx, extra_sites=cfg.extra_sites)
        _render(out, "voronoi-extended", extended, ctx, palette)
        report.field("extra sites", len(cfg.extra_sites))
    if cfg.basin_csv:
        try:
            basins = read_grid_csv(cfg.basin_csv, spec, ctx)
        except OSError as e:
            raise ConfigError(f"cannot read basin_csv: {e}", key="basin_csv") from e
        mask = boundary_mask(grid) | boundary_mask(basins)
        report.field("agreement", f"{agreement(basins, grid):.6f}")
        report.field("agreement (boundary cells excluded)", f"{agreement(basins, grid, exclude=mask):.6f}")
    report.write(out, cfg)
    out.write_config(cfg)
    return 0


def run_verify(cfg: RunConfig, out: OutputDirectory) -> int:
    if cfg.t_lo is None and cfg.rect is None:
        raise ConfigError("verify needs t_lo/t_hi or rect", key="rect")
    ctx = PrecisionContext(cfg.digits, cfg.guard_digits)
    report = RunReport("xibasin verify")
    report.field("digits", ctx.digits)

    if cfg.t_lo is not None:
        scan = sign_scan(cfg.t_lo, cfg.t_hi, cfg.scan_step, ctx, workers=cfg.workers)
        refined = scan.refined(ctx)
        rows = [[i, _nstr(a, 15), _nstr(b, 15), _nstr(t, 15)] for i, ((a, b), t) in enumerate(zip(scan.brackets, refined))]
        out.write_csv("brackets.csv", ["index", "t_a", "t_b", "t_refined"], rows)
        report.section("Critical-line sign changes")
        report.field("interval", f"[{cfg.t_lo}, {cfg.t_hi}] step {cfg.scan_step}")
        report.field("brackets", len(scan.brackets))
        report.table(["index", "t_a", "t_b", "t_refined"], rows)

    if cfg.rect is not None:
        setup = build_setup(cfg)
        try:
            rect = Rect(*cfg.rect)
        except DomainError as e:
            raise ConfigError(str(e), key="rect") from e
        count = count_zeros_rect(setup.handle, rect)
        report.section("Argument-principle count")
        report.field("function", setup.handle.evaluator.describe())
        report.field("rect", f"[{rect.x_lo}, {rect.x_hi}] x [{rect.y_lo}, {rect.y_hi}]")
        report.field("zeros", count)

    report.write(out, cfg)
    out.write_config(cfg)
    return 0


def run_seeds(cfg: RunConfig, out: OutputDirectory) -> int:
    if cfg.seed_height is None:
        raise ConfigError("seed scans need seed_height", key="seed_height")
    setup = build_setup(cfg)
    settings = SeedScanSettings(
        height=cfg.seed_height,
        seed_count=cfg.seed_count,
        spacing=cfg.seed_spacing,
        refine_splits=cfg.refine_splits,
        extension_budget=cfg.extension_budget,
        verify_radius=cfg.verify_radius,
    )
    result = seed_scan(setup.handle, setup.params, settings, workers=cfg.workers, status_callback=logger.info)

    seed_rows = [
        [_nstr(o.y, 20), o.root_id, o.outcome, _nstr(o.terminal.real, 25), _nstr(o.terminal.imag, 25), o.iterations]
        for o in result.seeds
    ]
    out.write_csv("seeds.csv", ["y0", "root", "outcome", "term_x", "term_y", "iterations"], seed_rows)
    root_rows = [
        [i, _nstr(r.real, 25), _nstr(r.imag, 25),
         "" if result.rect is None else str(result.rect.contains(r)).lower(),
         "" if v is None else str(v).lower()]
        for i, (r, v) in enumerate(zip(result.roots, result.verified))
    ]
    out.write_csv("roots.csv", ["index", "x", "y", "in_window", "verified"], root_rows)

    iterations = [o.iterations for o in result.seeds if o.outcome == Outcome.CONVERGED_ROOT.value]
    report = RunReport(f"xibasin seed scan: {cfg.preset or setup.handle.name} at T={cfg.seed_height}")
    report.field("digits", setup.ctx.digits).field("deltas", setup.params.deltas)
    report.field("seeds run", len(result.seeds)).field("distinct roots", len(result.roots))
    report.field("roots in window", len(result.roots_in_window()))
    report.field("zeros counted in window", "failed" if result.counted is None else result.counted)
    if result.rect is not None:
        report.field("window", f"[{result.rect.x_lo}, {result.rect.x_hi}] x [{result.rect.y_lo}, {result.rect.y_hi}]")
    report.field("complete", str(result.complete).lower())
    if iterations:
        report.field("iterations (min/mean/max)",
                     f"{min(iterations)}/{sum(iterations) / len(iterations):.2f}/{max(iterations)}")
    report.section("Roots").table(["index", "x", "y", "in_window", "verified"], root_rows)
    report.write(out, cfg)
    out.write_config(cfg)
    return 0 if result.counted is not None else 1


RUNNERS = {
    "solve": run_solve,
    "basins": run_basins,
    "voronoi": run_voronoi,
    "verify": run_verify,
    "seeds": run_seeds,
}

