"""
Newton-type comparator maps: Newton, relaxed Newton (fixed or random α),
and the ν map z − g/(z g').
"""

from typing import Callable, Iterator, Optional

import mpmath
import numpy as np

from ..errors import DomainError, XibasinError
from ..functions import FunctionHandle
from ..logger_config import get_logger
from .bnqn import BNQNParams, bnqn_run
from .trajectory import IterationRecord, Outcome, Trajectory

logger = get_logger(__name__)

METHODS = ("bnqn", "newton", "relaxed", "random-relaxed", "nu")
RANDOM_ALPHA_RADIUS = 0.5


def newton_step(h: FunctionHandle, z) -> mpmath.mpc:
    return relaxed_newton_step(h, z, 1)


def relaxed_newton_step(h: FunctionHandle, z, alpha) -> mpmath.mpc:
    g, g1, _ = h.evaluate(z)
    with h.ctx.scope():
        if g1 == 0:
            raise DomainError("critical point")
        return mpmath.mpc(z) - mpmath.mpc(alpha) * g / g1


def nu_step(h: FunctionHandle, z) -> mpmath.mpc:
    with h.ctx.scope():
        z = mpmath.mpc(z)
        if z == 0:
            raise DomainError("nu map undefined at z=0")
        g, g1, _ = h.evaluate(z)
        if g1 == 0:
            raise DomainError("critical point")
        return z - g / (z * g1)


def random_alphas(seed: int, index: int = 0) -> Iterator[complex]:
    """α uniform on the disk |α − 1| <= 1/2, from a stream keyed on (seed, index)."""
    rng = np.random.default_rng([seed, index])
    while True:
        radius = RANDOM_ALPHA_RADIUS * np.sqrt(rng.random())
        angle = 2 * np.pi * rng.random()
        yield complex(1 + radius * np.cos(angle), radius * np.sin(angle))


def _iterate(
    h: FunctionHandle,
    z0,
    step: Callable[[mpmath.mpc, int], mpmath.mpc],
    max_iter: int,
    root_tol: float,
    divergence_factor: float,
    method: str,
) -> Trajectory:
    """
    Shared driver for the comparator maps. Stops when the step length falls
    below 10^(-digits/2)·max(1, |z|), when |z| leaves the divergence radius,
    or after ``max_iter`` steps. A failing step (g' = 0) ends the run as
    Unresolved.
    """
    ctx = h.ctx
    with ctx.scope():
        z = ctx.complex(z0)
        radius = mpmath.mpf(divergence_factor) * (1 + abs(z))
        step_tol = mpmath.mpf(10) ** (-(ctx.digits / 2))
        records = []
        outcome = Outcome.MAX_ITER
        failure = None
        for k in range(max_iter):
            g, g1, _ = h.evaluate(z)
            F = (g.real ** 2 + g.imag ** 2) / 2
            grad_norm = abs(g) * abs(g1)
            if g == 0:
                outcome = Outcome.CONVERGED_ROOT
                break
            try:
                z_next = step(z, k)
            except XibasinError as exc:
                outcome = Outcome.UNRESOLVED
                failure = str(exc)
                break
            records.append(IterationRecord(index=k, z=z, F=F, grad_norm=grad_norm, gamma=abs(z_next - z)))
            moved = abs(z_next - z)
            z = z_next
            if abs(z) > radius:
                outcome = Outcome.DIVERGED
                break
            if moved <= step_tol * max(1, abs(z)):
                outcome = Outcome.CONVERGED_ROOT
                break

        try:
            g, g1, _ = h.evaluate(z)
            F, grad_norm = (g.real ** 2 + g.imag ** 2) / 2, abs(g) * abs(g1)
        except XibasinError:
            g, g1 = mpmath.mpc(mpmath.inf), mpmath.mpc(1)
            F, grad_norm = mpmath.inf, mpmath.inf
        if outcome in (Outcome.CONVERGED_ROOT, Outcome.MAX_ITER) and mpmath.isfinite(F):
            newton_distance = 0 if g == 0 else (abs(g / g1) if g1 != 0 else mpmath.inf)
            if newton_distance <= root_tol:
                outcome = Outcome.CONVERGED_ROOT
            elif outcome == Outcome.CONVERGED_ROOT:
                outcome = Outcome.CONVERGED_CRITICAL
        records.append(IterationRecord(index=len(records), z=z, F=F, grad_norm=grad_norm))
        if failure:
            logger.debug(f"{method} run from {mpmath.nstr(ctx.complex(z0), 10)} unresolved: {failure}")
        return Trajectory(records=records, outcome=outcome, terminal=z, method=method, failure=failure)


def newton_run(h: FunctionHandle, z0, p: Optional[BNQNParams] = None) -> Trajectory:
    p = p or BNQNParams()
    return _iterate(h, z0, lambda z, k: newton_step(h, z), p.max_iter, p.root_tol, p.divergence_factor, "newton")


def relaxed_run(h: FunctionHandle, z0, alphas, p: Optional[BNQNParams] = None) -> Trajectory:
    """Relaxed Newton with α_k taken from ``alphas`` (a constant or an iterator)."""
    p = p or BNQNParams()
    if isinstance(alphas, (int, float, complex, str, mpmath.mpf, mpmath.mpc)):
        alpha = h.ctx.complex(alphas)
        pick = lambda k: alpha  # noqa: E731
    else:
        stream = iter(alphas)
        pick = lambda k: next(stream)  # noqa: E731
    return _iterate(
        h, z0, lambda z, k: relaxed_newton_step(h, z, pick(k)),
        p.max_iter, p.root_tol, p.divergence_factor, "relaxed",
    )


def random_relaxed_run(h: FunctionHandle, z0, seed: int, max_iter: int = 30, index: int = 0,
                       p: Optional[BNQNParams] = None) -> Trajectory:
    p = (p or BNQNParams()).with_(max_iter=max_iter)
    trajectory = relaxed_run(h, z0, random_alphas(seed, index), p)
    trajectory.method = "random-relaxed"
    return trajectory


def nu_run(h: FunctionHandle, z0, p: Optional[BNQNParams] = None) -> Trajectory:
    p = p or BNQNParams()
    return _iterate(h, z0, lambda z, k: nu_step(h, z), p.max_iter, p.root_tol, p.divergence_factor, "nu")


def run_method(method: str, h: FunctionHandle, z0, p: BNQNParams, index: int = 0, alpha=None) -> Trajectory:
    """Dispatch one trajectory by method name."""
    if method == "bnqn":
        return bnqn_run(h, z0, p)
    if method == "newton":
        return newton_run(h, z0, p)
    if method == "relaxed":
        return relaxed_run(h, z0, 1 if alpha is None else alpha, p)
    if method == "random-relaxed":
        return random_relaxed_run(h, z0, p.seed, p.max_iter, index, p)
    if method == "nu":
        return nu_run(h, z0, p)
    raise DomainError(f"unknown method: {method}")
