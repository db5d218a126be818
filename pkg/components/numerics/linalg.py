"""
Closed-form linear algebra for 2×2 real symmetric matrices.
"""

from dataclasses import dataclass
from typing import Tuple

import mpmath

from .precision import PrecisionContext

Vec2 = Tuple[mpmath.mpf, mpmath.mpf]


@dataclass(frozen=True)
class Sym2:
    """The symmetric matrix [[a, b], [b, d]]."""

    a: mpmath.mpf
    b: mpmath.mpf
    d: mpmath.mpf

    def trace(self) -> mpmath.mpf:
        return self.a + self.d

    def det(self) -> mpmath.mpf:
        return self.a * self.d - self.b * self.b

    def shifted(self, shift: mpmath.mpf) -> "Sym2":
        """self + shift·Id"""
        return Sym2(self.a + shift, self.b, self.d + shift)

    def apply(self, v: Vec2) -> Vec2:
        return (self.a * v[0] + self.b * v[1], self.b * v[0] + self.d * v[1])


@dataclass(frozen=True)
class Eigen2:
    """Eigenpairs with lam1 >= lam2 and orthonormal e1, e2."""

    lam1: mpmath.mpf
    lam2: mpmath.mpf
    e1: Vec2
    e2: Vec2

    def pairs(self):
        return ((self.lam1, self.e1), (self.lam2, self.e2))


def dot(u: Vec2, v: Vec2) -> mpmath.mpf:
    return u[0] * v[0] + u[1] * v[1]


def norm(v: Vec2) -> mpmath.mpf:
    return mpmath.sqrt(v[0] * v[0] + v[1] * v[1])


def eig2_sym(H: Sym2, ctx: PrecisionContext) -> Eigen2:
    """Eigen-decomposition λ = ((a+d) ± √((a−d)² + 4b²))/2."""
    with ctx.scope():
        a, b, d = mpmath.mpf(H.a), mpmath.mpf(H.b), mpmath.mpf(H.d)
        half_gap = (a - d) / 2
        radius = mpmath.sqrt(half_gap * half_gap + b * b)
        mean = (a + d) / 2
        lam1 = mean + radius
        lam2 = mean - radius

        one, zero = mpmath.mpf(1), mpmath.mpf(0)
        if b == 0:
            if a >= d:
                return Eigen2(lam1, lam2, (one, zero), (zero, one))
            return Eigen2(lam1, lam2, (zero, one), (one, zero))

        # Pick the eigenvector form whose leading entry has no cancellation.
        if a >= d:
            u = (half_gap + radius, b)
        else:
            u = (b, radius - half_gap)
        length = norm(u)
        e1 = (u[0] / length, u[1] / length)
        e2 = (e1[1], -e1[0])
        return Eigen2(lam1, lam2, e1, e2)


def minsp(H: Sym2, ctx: PrecisionContext) -> mpmath.mpf:
    """Smallest eigenvalue modulus."""
    eig = eig2_sym(H, ctx)
    with ctx.scope():
        return min(abs(eig.lam1), abs(eig.lam2))
