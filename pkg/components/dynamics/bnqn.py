"""
Backtracking New Q-Newton's method on F(x, y) = |g(x+iy)|²/2.

Each step shifts the Hessian by δ_j‖∇F‖^τ for the first δ_j that keeps every
eigenvalue at least κ‖∇F‖^τ away from zero, reflects the Newton direction
across the negative eigenspace of the shifted matrix, caps its length at
1/θ, and backtracks on γ with the Armijo constant 1/3.
"""

from dataclasses import dataclass, replace
from itertools import combinations
from typing import Optional, Tuple

import mpmath
import numpy as np

from ..errors import ConvergenceError, DomainError, XibasinError
from ..functions import FunctionHandle
from ..logger_config import get_logger
from ..numerics import Sym2, dot, eig2_sym, norm
from .trajectory import IterationRecord, Outcome, Trajectory

logger = get_logger(__name__)

ARMIJO_C = 1.0 / 3.0
DEFAULT_DELTA_COUNT = 3
DELTA_RANGE = (-2.0, 2.0)
MIN_DELTA_GAP = 0.1


def default_deltas(seed: int, count: int = DEFAULT_DELTA_COUNT) -> Tuple[float, ...]:
    """``count`` values uniform in [-2, 2], redrawn until pairwise gaps are >= 0.1."""
    rng = np.random.default_rng(seed)
    while True:
        draw = rng.uniform(*DELTA_RANGE, size=count)
        if all(abs(a - b) >= MIN_DELTA_GAP for a, b in combinations(draw, 2)):
            return tuple(float(v) for v in draw)


@dataclass(frozen=True)
class BNQNParams:
    deltas: Tuple[float, ...] = (0.0, 1.0, -1.0)
    theta: float = 1.0
    tau: float = 1.0
    gamma0: float = 1.0
    armijo_c: float = ARMIJO_C
    max_iter: int = 30
    grad_tol: Optional[float] = None
    max_halvings: int = 200
    root_tol: float = 1e-6
    divergence_factor: float = 10.0
    seed: int = 0

    def __post_init__(self):
        if len(self.deltas) < 3:
            raise DomainError("at least three deltas are required")
        if len(set(self.deltas)) != len(self.deltas):
            raise DomainError("deltas must be distinct")
        if self.theta < 0:
            raise DomainError("theta must be >= 0")
        if self.tau <= 0:
            raise DomainError("tau must be > 0")
        if not 0 < self.gamma0 <= 1:
            raise DomainError("gamma0 must lie in (0, 1]")
        if self.max_iter < 0 or self.max_halvings < 1:
            raise DomainError("max_iter must be >= 0 and max_halvings >= 1")
        if self.root_tol <= 0:
            raise DomainError("root_tol must be positive")

    @classmethod
    def seeded(cls, seed: int, **kwargs) -> "BNQNParams":
        """Parameters with deltas drawn from ``seed``."""
        return cls(deltas=default_deltas(seed), seed=seed, **kwargs)

    @property
    def kappa(self) -> float:
        return min(abs(a - b) for a, b in combinations(self.deltas, 2)) / 2

    def resolved_grad_tol(self, digits: int) -> mpmath.mpf:
        if self.grad_tol is not None:
            return mpmath.mpf(self.grad_tol)
        return mpmath.mpf(10) ** (-(digits / 2))

    def with_(self, **changes) -> "BNQNParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class GradHess:
    grad: Tuple[mpmath.mpf, mpmath.mpf]
    hess: Sym2
    g: mpmath.mpc
    g1: mpmath.mpc

    @property
    def F(self) -> mpmath.mpf:
        return (self.g.real ** 2 + self.g.imag ** 2) / 2

    @property
    def grad_norm(self) -> mpmath.mpf:
        return norm(self.grad)


def grad_hess_F(h: FunctionHandle, z) -> GradHess:
    """Gradient and Hessian of F from (g, g', g'') through the Wirtinger formulas."""
    if h.is_pole(z):
        raise DomainError("pole evaluation")
    g, g1, g2 = h.evaluate(z)
    with h.ctx.scope():
        gc = mpmath.conj(g)
        first = gc * g1
        second = gc * g2
        g1_sq = g1.real ** 2 + g1.imag ** 2
        grad = (first.real, -first.imag)
        hess = Sym2(g1_sq + second.real, -second.imag, g1_sq - second.real)
        return GradHess(grad, hess, g, g1)


def _objective(h: FunctionHandle, z) -> mpmath.mpf:
    """F(z), +inf at poles and where g cannot be evaluated as a finite value."""
    try:
        value = h.objective(z)
    except XibasinError:
        return mpmath.inf
    return value if mpmath.isfinite(value) else mpmath.inf


def bnqn_step(
    h: FunctionHandle,
    z,
    p: BNQNParams,
    gh: Optional[GradHess] = None,
    index: int = 0,
) -> Tuple[mpmath.mpc, IterationRecord]:
    ctx = h.ctx
    if gh is None:
        gh = grad_hess_F(h, z)
    with ctx.scope():
        z = mpmath.mpc(z)
        grad = gh.grad
        grad_norm = norm(grad)
        if grad_norm == 0:
            raise DomainError("stationary point")

        scale = grad_norm ** mpmath.mpf(p.tau)
        kappa_scale = mpmath.mpf(p.kappa) * scale
        for j, delta in enumerate(p.deltas):
            shifted = gh.hess.shifted(mpmath.mpf(delta) * scale)
            eig = eig2_sym(shifted, ctx)
            spectrum = min(abs(eig.lam1), abs(eig.lam2))
            if spectrum >= kappa_scale:
                break
        else:
            raise ConvergenceError("delta exhaustion")

        # A⁻¹∇F with negative-eigenvalue components flipped
        wx, wy = mpmath.mpf(0), mpmath.mpf(0)
        for lam, e in eig.pairs():
            c = dot(e, grad) / abs(lam)
            wx += c * e[0]
            wy += c * e[1]
        cap = max(mpmath.mpf(1), mpmath.mpf(p.theta) * norm((wx, wy)))
        direction = (wx / cap, wy / cap)
        descent = dot(direction, grad)
        step = mpmath.mpc(direction[0], direction[1])

        F0 = gh.F
        armijo = mpmath.mpf(p.armijo_c)
        gamma = mpmath.mpf(p.gamma0)
        halvings = 0
        while True:
            candidate = z - gamma * step
            F1 = _objective(h, candidate)
            if not F1 - F0 > -gamma * descent * armijo:
                break
            gamma /= 2
            halvings += 1
            if halvings > p.max_halvings:
                raise ConvergenceError("line-search stall")

        record = IterationRecord(
            index=index,
            z=z,
            F=F0,
            grad_norm=grad_norm,
            delta_index=j,
            gamma=gamma,
            halvings=halvings,
            descent=descent,
            min_spectrum=spectrum,
            kappa_scale=kappa_scale,
            step_norm=gamma * abs(step),
        )
        return candidate, record


def is_root(gh: GradHess, root_tol: float) -> bool:
    """g = 0, or the Newton distance |g/g'| is within ``root_tol``."""
    if gh.g == 0:
        return True
    if gh.g1 == 0:
        return False
    return abs(gh.g / gh.g1) <= root_tol


def bnqn_run(h: FunctionHandle, z0, p: BNQNParams) -> Trajectory:
    ctx = h.ctx
    with ctx.scope():
        z = ctx.complex(z0)
        if h.is_pole(z):
            raise DomainError("pole evaluation")
        radius = mpmath.mpf(p.divergence_factor) * (1 + abs(z))
        gh = grad_hess_F(h, z)
        stop_norm = p.resolved_grad_tol(ctx.digits) * gh.grad_norm

        records = []
        outcome = Outcome.MAX_ITER
        for k in range(p.max_iter + 1):
            if gh.grad_norm <= stop_norm:
                outcome = Outcome.CONVERGED_ROOT if is_root(gh, p.root_tol) else Outcome.CONVERGED_CRITICAL
                break
            if k == p.max_iter:
                if is_root(gh, p.root_tol):
                    outcome = Outcome.CONVERGED_ROOT
                break
            z_next, record = bnqn_step(h, z, p, gh, index=k)
            records.append(record)
            logger.debug(
                f"bnqn k={k} z={mpmath.nstr(z, 15)} F={mpmath.nstr(record.F, 8)} "
                f"j={record.delta_index} gamma={mpmath.nstr(record.gamma, 6)} halvings={record.halvings}"
            )
            z = z_next
            if abs(z) > radius:
                outcome = Outcome.DIVERGED
                gh = None
                break
            gh = grad_hess_F(h, z)

        if gh is not None:
            terminal = IterationRecord(index=len(records), z=z, F=gh.F, grad_norm=gh.grad_norm)
        else:
            terminal = IterationRecord(index=len(records), z=z, F=_objective(h, z), grad_norm=mpmath.inf)
        records.append(terminal)
        return Trajectory(records=records, outcome=outcome, terminal=z, method="bnqn")
