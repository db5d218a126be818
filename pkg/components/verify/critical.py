"""
Sign changes of ξ on the critical line.

ξ(½+it) is real for real t, so a change of sign between two sample heights
brackets a zero on the line.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import mpmath

from ..errors import ConvergenceError, DomainError
from ..functions import xi
from ..logger_config import get_logger
from ..numerics import PrecisionContext
from ..progress_worker import BatchWorker

logger = get_logger(__name__)

REFINE_WIDTH = 1e-8
CHUNK_SIZE = 16


def xi_critical(t, ctx: PrecisionContext) -> mpmath.mpf:
    """Re ξ(½+it); the imaginary residue must stay below 10^(-digits/2)."""
    with ctx.scope():
        value = xi(mpmath.mpc(mpmath.mpf(0.5), mpmath.mpf(t)), ctx)
        if abs(value.imag) > mpmath.mpf(10) ** (-(ctx.digits / 2)):
            raise ConvergenceError("precision breach")
        return value.real


def _sign(value) -> int:
    return (value > 0) - (value < 0)


def _critical_values(task: Tuple[PrecisionContext, Tuple]) -> List[mpmath.mpf]:
    ctx, heights = task
    return [xi_critical(t, ctx) for t in heights]


@dataclass
class SignScan:
    t_lo: mpmath.mpf
    t_hi: mpmath.mpf
    step: mpmath.mpf
    brackets: List[Tuple[mpmath.mpf, mpmath.mpf]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.brackets)

    def refined(self, ctx: PrecisionContext, width: float = REFINE_WIDTH) -> List[mpmath.mpf]:
        """Midpoints of every bracket after bisection to ``width``."""
        return [sum(refine_bracket(a, b, ctx, width)) / 2 for a, b in self.brackets]


def sign_scan(t_lo, t_hi, step, ctx: Optional[PrecisionContext] = None, workers: Optional[int] = 1) -> SignScan:
    """Bracket every sign change of ξ(½+it) on [t_lo, t_hi] sampled every ``step``."""
    ctx = ctx or PrecisionContext()
    with ctx.scope():
        t_lo, t_hi, step = mpmath.mpf(t_lo), mpmath.mpf(t_hi), mpmath.mpf(step)
        if not step > 0:
            raise DomainError("step must be positive")
        if t_hi < t_lo:
            raise DomainError("t_hi must not be below t_lo")
        count = int(mpmath.floor((t_hi - t_lo) / step))
        heights = [t_lo + k * step for k in range(count + 1)]
        if heights[-1] < t_hi:
            heights.append(t_hi)

    chunks = [tuple(heights[i:i + CHUNK_SIZE]) for i in range(0, len(heights), CHUNK_SIZE)]
    worker = BatchWorker(_critical_values, [(ctx, chunk) for chunk in chunks], workers=workers, label="sign scan")
    values = [v for chunk in worker.run() for v in chunk]

    scan = SignScan(t_lo=t_lo, t_hi=t_hi, step=step)
    for k in range(len(heights) - 1):
        s_a, s_b = _sign(values[k]), _sign(values[k + 1])
        if s_a * s_b < 0:
            scan.brackets.append((heights[k], heights[k + 1]))
        elif s_b == 0:
            scan.brackets.append((heights[k + 1], heights[k + 1]))
    if values and _sign(values[0]) == 0:
        scan.brackets.insert(0, (heights[0], heights[0]))
    logger.info(f"sign scan [{mpmath.nstr(t_lo, 12)}, {mpmath.nstr(t_hi, 12)}] step {mpmath.nstr(step, 6)}: "
                f"{len(scan.brackets)} bracket(s)")
    return scan


def refine_bracket(a, b, ctx: PrecisionContext, width: float = REFINE_WIDTH) -> Tuple[mpmath.mpf, mpmath.mpf]:
    """Bisect a sign-change bracket down to ``width``."""
    with ctx.scope():
        a, b = mpmath.mpf(a), mpmath.mpf(b)
        s_a = _sign(xi_critical(a, ctx))
        while b - a > width:
            mid = (a + b) / 2
            s_m = _sign(xi_critical(mid, ctx))
            if s_m == 0:
                return mid, mid
            if s_m == s_a:
                a = mid
            else:
                b = mid
        return a, b


def verify_root_near(z, radius, ctx: Optional[PrecisionContext] = None, samples: int = 20) -> bool:
    """A sign change of ξ on the critical line within ``radius`` of Im z."""
    ctx = ctx or PrecisionContext()
    with ctx.scope():
        radius = mpmath.mpf(radius)
        if not radius > 0:
            raise DomainError("radius must be positive")
        t = ctx.complex(z).imag
        scan = sign_scan(t - radius, t + radius, 2 * radius / samples, ctx)
        return len(scan.brackets) > 0


def critical_zeros(t_lo, t_hi, step, ctx: Optional[PrecisionContext] = None, workers: Optional[int] = 1) -> Sequence[mpmath.mpf]:
    """Heights of the sign changes on [t_lo, t_hi], refined by bisection."""
    ctx = ctx or PrecisionContext()
    return sign_scan(t_lo, t_hi, step, ctx, workers).refined(ctx)
