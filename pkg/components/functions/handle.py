"""
FunctionHandle: an evaluator for (g, g', g'') bound to a precision context.

Evaluators are small picklable objects so handles can be shipped to worker
processes; anything expensive to rebuild (quadrature nodes, Bernoulli
numbers) lives in module-level caches.
"""

from dataclasses import dataclass
from typing import Tuple

import mpmath

from ..numerics import PrecisionContext

Jet = Tuple[mpmath.mpc, mpmath.mpc, mpmath.mpc]


class Evaluator:
    """Interface implemented by every target function."""

    name = "function"

    def jet(self, z: mpmath.mpc, ctx: PrecisionContext) -> Jet:
        raise NotImplementedError

    def value(self, z: mpmath.mpc, ctx: PrecisionContext) -> mpmath.mpc:
        return self.jet(z, ctx)[0]

    def is_pole(self, z: mpmath.mpc) -> bool:
        return False

    def describe(self) -> str:
        return self.name


@dataclass(frozen=True)
class FunctionHandle:
    """(g, g', g'') of one meromorphic function, evaluated under ``ctx``."""

    evaluator: Evaluator
    ctx: PrecisionContext

    @property
    def name(self) -> str:
        return self.evaluator.name

    def evaluate(self, z) -> Jet:
        with self.ctx.scope():
            g, g1, g2 = self.evaluator.jet(mpmath.mpc(z), self.ctx)
            return +g, +g1, +g2

    def value(self, z) -> mpmath.mpc:
        with self.ctx.scope():
            return +self.evaluator.value(mpmath.mpc(z), self.ctx)

    def is_pole(self, z) -> bool:
        return self.evaluator.is_pole(z)

    def objective(self, z) -> mpmath.mpf:
        """F = |g|²/2, +inf at poles."""
        if self.is_pole(z):
            return mpmath.inf
        with self.ctx.scope():
            g = self.evaluator.value(mpmath.mpc(z), self.ctx)
            return (g.real * g.real + g.imag * g.imag) / 2

    def with_context(self, ctx: PrecisionContext) -> "FunctionHandle":
        return FunctionHandle(self.evaluator, ctx)
