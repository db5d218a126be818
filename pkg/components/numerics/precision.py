"""
Working-precision handling.

A PrecisionContext is an immutable description of how many significant
decimal digits a computation carries. It is passed explicitly to every
operation that does arithmetic; ``scope()`` applies it to mpmath for the
duration of a block, so runs at different precisions never share a global
setting.
"""

import math
from dataclasses import dataclass
from typing import Any, Union

import mpmath

from ..errors import DomainError

BigComplex = mpmath.mpc
Real = mpmath.mpf
Number = Union[int, float, str, complex, mpmath.mpf, mpmath.mpc]

MIN_DIGITS = 15


@dataclass(frozen=True)
class PrecisionContext:
    """Significant decimal digits plus internal guard digits."""

    digits: int = 50
    guard_digits: int = 10

    def __post_init__(self):
        if not isinstance(self.digits, int) or self.digits < MIN_DIGITS:
            raise DomainError(f"digits must be an integer >= {MIN_DIGITS}, got {self.digits!r}")
        if not isinstance(self.guard_digits, int) or self.guard_digits < 0:
            raise DomainError(f"guard_digits must be a non-negative integer, got {self.guard_digits!r}")

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard_digits

    def scope(self):
        """Context manager running mpmath at this context's working precision."""
        return mpmath.workdps(self.working_digits)

    def elevated(self, factor: float = 1.5) -> "PrecisionContext":
        """A context with ``digits`` raised by ``factor`` (same guard digits)."""
        return PrecisionContext(int(math.ceil(self.digits * factor)), self.guard_digits)

    def eps(self, offset: float = 0) -> mpmath.mpf:
        """10^(-digits + offset) as an mpf."""
        with self.scope():
            return mpmath.mpf(10) ** (-self.digits + offset)

    def tol(self, exponent: float) -> mpmath.mpf:
        """10^exponent as an mpf at working precision."""
        with self.scope():
            return mpmath.mpf(10) ** exponent

    def real(self, value: Number) -> mpmath.mpf:
        with self.scope():
            return mpmath.mpf(value)

    def complex(self, value: Any) -> mpmath.mpc:
        """Parse a number, a ``(x, y)`` pair, or a string such as ``'0.5+14.1347j'``."""
        with self.scope():
            if isinstance(value, (tuple, list)) and len(value) == 2:
                return mpmath.mpc(mpmath.mpf(value[0]), mpmath.mpf(value[1]))
            if isinstance(value, str):
                return mpmath.mpc(mpmath.mpmathify(value.strip().replace(' ', '')))
            return mpmath.mpc(value)


def is_finite(z: Union[mpmath.mpf, mpmath.mpc]) -> bool:
    return bool(mpmath.isfinite(z))


def abs2(z: BigComplex, ctx: PrecisionContext) -> mpmath.mpf:
    """re² + im² under ``ctx``."""
    if not is_finite(z):
        raise DomainError("nonfinite operand")
    with ctx.scope():
        z = mpmath.mpc(z)
        return z.real * z.real + z.imag * z.imag
