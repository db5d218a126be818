"""
Finding every zero in a unit-height window from seeds on the imaginary axis.

Seeds (0, T + j·spacing) are run through BNQN. Where two neighbouring seeds
end at different roots, extra seeds are placed between them. The distinct
roots inside the window are compared with the argument-principle count of
the window; seeds below T and above T+1 are added until the two agree or
the extension budget runs out.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import mpmath

from ..dynamics import BNQNParams, Outcome, bnqn_run
from ..errors import ConvergenceError, XibasinError
from ..functions import FunctionHandle
from ..logger_config import get_logger
from ..progress_worker import BatchWorker
from .contour import Rect, count_zeros_rect
from .critical import verify_root_near

logger = get_logger(__name__)

NO_ROOT = -1


@dataclass(frozen=True)
class SeedScanSettings:
    height: float
    seed_count: int = 31
    spacing: float = 1.0 / 30.0
    refine_splits: int = 10
    extension_budget: int = 60
    x_lo: float = -1.0
    x_hi: float = 2.0
    verify_radius: Optional[float] = 1e-6
    match_tol: float = 1e-5


@dataclass
class SeedOutcome:
    y: mpmath.mpf
    root_id: int
    outcome: str
    terminal: mpmath.mpc
    iterations: int


@dataclass
class SeedScanResult:
    settings: SeedScanSettings
    rect: Optional[Rect]
    counted: Optional[int]
    seeds: List[SeedOutcome] = field(default_factory=list)
    roots: List[mpmath.mpc] = field(default_factory=list)
    verified: List[Optional[bool]] = field(default_factory=list)

    def roots_in_window(self) -> List[mpmath.mpc]:
        if self.rect is None:
            return list(self.roots)
        return [r for r in self.roots if self.rect.contains(r)]

    @property
    def complete(self) -> bool:
        return self.counted is not None and len(self.roots_in_window()) == self.counted


def _run_seed(task: Tuple[FunctionHandle, BNQNParams, mpmath.mpc]) -> Tuple[str, mpmath.mpc, int]:
    h, params, z0 = task
    try:
        trajectory = bnqn_run(h, z0, params)
        return trajectory.outcome.value, trajectory.terminal, trajectory.iterations
    except XibasinError as e:
        logger.debug(f"seed {mpmath.nstr(z0, 15)} failed: {e}")
        return Outcome.UNRESOLVED.value, z0, 0


class SeedScanner:
    """Runs seeds, keeps the distinct roots found so far."""

    def __init__(self, h: FunctionHandle, params: BNQNParams, settings: SeedScanSettings,
                 workers: Optional[int] = 1, status_callback: Optional[Callable[[str], None]] = None):
        self.h = h
        self.params = params
        self.settings = settings
        self.workers = workers
        self.status_callback = status_callback
        self.roots: List[mpmath.mpc] = []
        self.seeds: List[SeedOutcome] = []

    def _root_id(self, z) -> int:
        for i, r in enumerate(self.roots):
            if abs(z - r) <= self.settings.match_tol:
                return i
        self.roots.append(z)
        return len(self.roots) - 1

    def run(self, heights: List[mpmath.mpf]) -> List[SeedOutcome]:
        ctx = self.h.ctx
        tasks = [(self.h, self.params, ctx.complex((0, y))) for y in heights]
        results = BatchWorker(_run_seed, tasks, workers=self.workers, label="seed scan",
                              status_callback=self.status_callback).run()
        outcomes = []
        with ctx.scope():
            for y, (outcome, terminal, iterations) in zip(heights, results):
                root_id = self._root_id(terminal) if outcome == Outcome.CONVERGED_ROOT.value else NO_ROOT
                outcomes.append(SeedOutcome(y, root_id, outcome, terminal, iterations))
        self.seeds.extend(outcomes)
        return outcomes


def _count_with_nudge(h: FunctionHandle, rect: Rect, step: float) -> Tuple[Optional[Rect], Optional[int]]:
    """Count zeros in ``rect``, moving horizontal edges by up to one scan step if a zero sits on them."""
    for dy_lo, dy_hi in ((0, 0), (-step / 2, 0), (0, step / 2), (-step / 2, step / 2),
                         (-step, 0), (0, step), (-step, step)):
        candidate = rect.shifted(dy_lo, dy_hi)
        try:
            return candidate, count_zeros_rect(h, candidate)
        except ConvergenceError as e:
            logger.info(f"zero count on {candidate} failed ({e}); nudging edges")
    logger.warning(f"zero count failed for every nudge of {rect}")
    return None, None


def seed_scan(
    h: FunctionHandle,
    params: BNQNParams,
    settings: SeedScanSettings,
    workers: Optional[int] = 1,
    status_callback: Optional[Callable[[str], None]] = None,
) -> SeedScanResult:
    ctx = h.ctx
    s = settings
    scanner = SeedScanner(h, params, s, workers, status_callback)
    with ctx.scope():
        T = mpmath.mpf(s.height)
        spacing = mpmath.mpf(s.spacing)
        base = scanner.run([T + j * spacing for j in range(s.seed_count)])

        # refine between neighbours that disagree
        extra = []
        for a, b in zip(base, base[1:]):
            if a.root_id != b.root_id:
                gap = (b.y - a.y) / (s.refine_splits + 1)
                extra.extend(a.y + k * gap for k in range(1, s.refine_splits + 1))
        if extra:
            logger.info(f"refining {len(extra)} seeds between disagreeing neighbours")
            scanner.run(extra)

        rect, counted = _count_with_nudge(h, Rect(s.x_lo, s.x_hi, float(T), float(T + 1)), float(spacing))
        result = SeedScanResult(settings=s, rect=rect, counted=counted)
        result.roots = scanner.roots

        # extend below and above the window
        j = 1
        while counted is not None and not result.complete and j <= s.extension_budget:
            scanner.run([T - j * spacing, T + 1 + j * spacing])
            result.roots = scanner.roots
            j += 1
        if counted is not None and not result.complete:
            logger.warning(f"seed scan at T={s.height}: found {len(result.roots_in_window())} of {counted} zeros")

        result.seeds = sorted(scanner.seeds, key=lambda o: o.y)
        result.roots = sorted(scanner.roots, key=lambda z: (z.imag, z.real))
        if s.verify_radius and h.name == "xi":
            result.verified = [verify_root_near(r, s.verify_radius, ctx) for r in result.roots]
        else:
            result.verified = [None] * len(result.roots)
        return result
