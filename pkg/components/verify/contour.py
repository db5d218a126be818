"""
Counting zeros inside a rectangle by the argument principle.

The change of arg g along the boundary equals Im ∮ g'/g. It is accumulated
edge by edge as principal-value increments of g(b)/g(a) over sub-arcs that
are split until each increment is below π/2 and agrees with the sum over
its two halves.
"""

from dataclasses import dataclass
from typing import List, Tuple

import mpmath

from ..errors import ConvergenceError, DomainError
from ..functions import FunctionHandle
from ..logger_config import get_logger

logger = get_logger(__name__)

INITIAL_SAMPLES = 16
MAX_DEPTH = 40
ARC_LIMIT = mpmath.pi / 2
CONSISTENCY = 0.1
RESIDUAL_LIMIT = 0.1


@dataclass(frozen=True)
class Rect:
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self):
        if not (self.x_lo < self.x_hi and self.y_lo < self.y_hi):
            raise DomainError("rectangle must have x_lo < x_hi and y_lo < y_hi")

    def corners(self) -> List[mpmath.mpc]:
        """Counter-clockwise from the lower left corner."""
        return [
            mpmath.mpc(self.x_lo, self.y_lo),
            mpmath.mpc(self.x_hi, self.y_lo),
            mpmath.mpc(self.x_hi, self.y_hi),
            mpmath.mpc(self.x_lo, self.y_hi),
        ]

    def contains(self, z) -> bool:
        z = mpmath.mpc(z)
        return self.x_lo < z.real < self.x_hi and self.y_lo < z.imag < self.y_hi

    def shifted(self, dy_lo: float = 0.0, dy_hi: float = 0.0) -> "Rect":
        return Rect(self.x_lo, self.x_hi, self.y_lo + dy_lo, self.y_hi + dy_hi)


class _ArgumentWalk:
    def __init__(self, h: FunctionHandle, floor):
        self.h = h
        self.floor = floor
        self.evaluations = 0

    def value(self, z) -> mpmath.mpc:
        g = self.h.value(z)
        self.evaluations += 1
        if abs(g) < self.floor:
            raise ConvergenceError("boundary proximity")
        return g

    def increment(self, a, b, ga, gb, depth: int) -> mpmath.mpf:
        whole = mpmath.arg(gb / ga)
        m = (a + b) / 2
        gm = self.value(m)
        left = mpmath.arg(gm / ga)
        right = mpmath.arg(gb / gm)
        if abs(whole) < ARC_LIMIT and abs(left + right - whole) <= CONSISTENCY:
            return left + right
        if depth >= MAX_DEPTH:
            raise ConvergenceError("boundary proximity")
        return self.increment(a, m, ga, gm, depth + 1) + self.increment(m, b, gm, gb, depth + 1)


def winding_number(h: FunctionHandle, r: Rect) -> mpmath.mpf:
    """Total change of arg g around ``r`` divided by 2π."""
    ctx = h.ctx
    with ctx.scope():
        corners = r.corners()
        edges: List[Tuple[mpmath.mpc, mpmath.mpc]] = [
            (corners[i], corners[(i + 1) % 4]) for i in range(4)
        ]
        points = []
        for a, b in edges:
            points.extend(a + (b - a) * k / INITIAL_SAMPLES for k in range(INITIAL_SAMPLES))
        values = [h.value(p) for p in points]
        peak = max(abs(v) for v in values)
        if peak == 0:
            raise ConvergenceError("boundary proximity")
        walk = _ArgumentWalk(h, mpmath.mpf(10) ** (-(ctx.digits / 2)) * peak)
        for v in values:
            if abs(v) < walk.floor:
                raise ConvergenceError("boundary proximity")

        total = mpmath.mpf(0)
        n = len(points)
        for k in range(n):
            a, b = points[k], points[(k + 1) % n]
            total += walk.increment(a, b, values[k], values[(k + 1) % n], 0)
        logger.debug(f"winding around {r}: {mpmath.nstr(total / (2 * mpmath.pi), 8)} "
                     f"after {walk.evaluations} extra evaluations")
        return total / (2 * mpmath.pi)


def count_zeros_rect(h: FunctionHandle, r: Rect) -> int:
    winding = winding_number(h, r)
    with h.ctx.scope():
        count = int(mpmath.nint(winding))
        if abs(winding - count) >= RESIDUAL_LIMIT:
            raise ConvergenceError("boundary proximity")
        return count
