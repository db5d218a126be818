"""
Riemann ζ, Γ and the completed function ξ.

ζ uses Euler–Maclaurin summation for Re s >= 0 and the functional equation
otherwise. Γ uses Stirling's series after reflection and an upward shift.
ξ is assembled as (s−1)ζ(s) · Γ(s/2+1) · π^(−s/2), which is the usual
s(s−1)/2 π^(−s/2) Γ(s/2) ζ(s) with the factor s absorbed into Γ.
"""

import math
from typing import Optional

import mpmath

from ..errors import ConvergenceError, DomainError
from ..logger_config import get_logger
from ..numerics import PrecisionContext
from .handle import Evaluator, FunctionHandle, Jet

logger = get_logger(__name__)

DEFAULT_CONTEXT = PrecisionContext(digits=50)


def _working_digits() -> int:
    return int(mpmath.mp.dps)


def zeta(s, ctx: PrecisionContext) -> mpmath.mpc:
    """ζ(s) for s != 1."""
    with ctx.scope():
        s = mpmath.mpc(s)
        if s == 1:
            raise DomainError("simple pole")
        if s.real < 0:
            return _zeta_reflected(s, ctx)
        return _zeta_euler_maclaurin(s)


def _zeta_reflected(s: mpmath.mpc, ctx: PrecisionContext) -> mpmath.mpc:
    # ζ(s) = 2^s π^(s−1) sin(πs/2) Γ(1−s) ζ(1−s)
    two = mpmath.mpf(2)
    return (
        mpmath.power(two, s)
        * mpmath.power(mpmath.pi, s - 1)
        * mpmath.sin(mpmath.pi * s / 2)
        * gamma(1 - s, ctx)
        * _zeta_euler_maclaurin(1 - s)
    )


def _zeta_euler_maclaurin(s: mpmath.mpc) -> mpmath.mpc:
    digits = _working_digits()
    n_terms = max(digits, int(0.7 * abs(s.imag)), int(abs(s) / (2 * math.pi))) + 10

    head = mpmath.fsum(mpmath.power(n, -s) for n in range(1, n_terms))
    big_n = mpmath.mpf(n_terms)
    n_pow = mpmath.power(big_n, -s)
    total = head + big_n * n_pow / (s - 1) + n_pow / 2

    threshold = mpmath.mpf(10) ** (-digits) * max(1, abs(total))
    inv_n2 = 1 / (big_n * big_n)
    # s(s+1)...(s+2k-2) · N^(-s-2k+1)
    rising = s * n_pow / big_n
    max_order = 2 * digits + 20
    for k in range(1, max_order + 1):
        if k > 1:
            rising *= (s + 2 * k - 3) * (s + 2 * k - 2) * inv_n2
        term = mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k) * rising
        total += term
        if abs(term) < threshold:
            return total
    raise ConvergenceError(f"Euler-Maclaurin tail did not settle at s={mpmath.nstr(s, 10)}")


def gamma(s, ctx: PrecisionContext) -> mpmath.mpc:
    """Γ(s); raises DomainError at non-positive integers."""
    with ctx.scope():
        s = mpmath.mpc(s)
        if s.imag == 0 and s.real <= 0 and s.real == mpmath.floor(s.real):
            raise DomainError("gamma pole")
        if s.real < 0.5:
            return mpmath.pi / (mpmath.sin(mpmath.pi * s) * gamma(1 - s, ctx))
        return mpmath.exp(_log_gamma_stirling(s))


def _log_gamma_stirling(s: mpmath.mpc) -> mpmath.mpc:
    digits = _working_digits()
    radius = 0.4 * digits + 10
    shift = 0
    if abs(s) < radius:
        shift = max(0, int(math.ceil(radius - float(s.real))))
    z = s + shift

    log_g = (z - mpmath.mpf(0.5)) * mpmath.log(z) - z + mpmath.log(2 * mpmath.pi) / 2
    threshold = mpmath.mpf(10) ** (-digits)
    z_inv = 1 / z
    z_inv2 = z_inv * z_inv
    power = z_inv
    for k in range(1, 4 * digits + 40):
        term = mpmath.bernoulli(2 * k) / ((2 * k) * (2 * k - 1)) * power
        log_g += term
        if abs(term) < threshold:
            break
        power *= z_inv2
    else:
        raise ConvergenceError(f"Stirling series did not settle at s={mpmath.nstr(s, 10)}")

    if shift:
        log_g -= mpmath.log(mpmath.rf(s, shift))
    return log_g


def xi(s, ctx: PrecisionContext) -> mpmath.mpc:
    """Completed zeta ξ(s); entire, ξ(s) = ξ(1−s)."""
    with ctx.scope():
        s = mpmath.mpc(s)
        # Trivial zeros of ζ meet poles of Γ(s/2+1); the mirror point is regular.
        if s.imag == 0 and s.real < 0 and s.real == mpmath.floor(s.real):
            return xi(1 - s, ctx)

        near_one = mpmath.mpf(10) ** (-(ctx.digits / 2))
        if abs(s - 1) < near_one:
            zeta_factor = 1 + mpmath.euler * (s - 1)
        else:
            zeta_factor = (s - 1) * zeta(s, ctx)
        return zeta_factor * gamma(s / 2 + 1, ctx) * mpmath.power(mpmath.pi, -s / 2)


class CompletedZeta(Evaluator):
    """ξ with derivatives by central differences at raised precision."""

    name = "xi"

    def jet(self, z, ctx) -> Jet:
        hi = ctx.elevated(1.5)
        with hi.scope():
            z = mpmath.mpc(z)
            h = mpmath.mpf(10) ** (-(ctx.digits / 3))
            f0 = xi(z, hi)
            fp = xi(z + h, hi)
            fm = xi(z - h, hi)
            d1 = (fp - fm) / (2 * h)
            d2 = (fp - 2 * f0 + fm) / (h * h)
        with ctx.scope():
            return +f0, +d1, +d2

    def value(self, z, ctx):
        return xi(z, ctx)


class CompletedZetaDerivative(Evaluator):
    """
    ξ^(order) via mpmath.diff of ξ at raised precision. ξ pins its own
    working precision, so the difference step is explicit: 10^(-D/(n+2)) for
    the n-th derivative keeps both truncation and rounding below 10^(-D/3).
    """

    def __init__(self, order: int):
        if order < 1:
            raise DomainError("derivative order must be at least 1")
        self.order = order
        self.name = f"xi_d{order}"

    def _derivatives(self, z, ctx, count: int):
        hi = ctx.elevated(1.5)
        with hi.scope():
            z = mpmath.mpc(z)
            values = []
            for k in range(count):
                n = self.order + k
                step = mpmath.mpf(10) ** (-(hi.digits / (n + 2)))
                values.append(mpmath.diff(lambda s: xi(s, hi), z, n, h=step))
        with ctx.scope():
            return tuple(+v for v in values)

    def jet(self, z, ctx) -> Jet:
        return self._derivatives(z, ctx, 3)

    def value(self, z, ctx):
        return self._derivatives(z, ctx, 1)[0]


def xi_handle(ctx: Optional[PrecisionContext] = None) -> FunctionHandle:
    return FunctionHandle(CompletedZeta(), ctx or DEFAULT_CONTEXT)


def xi_derivative_handle(order: int = 1, ctx: Optional[PrecisionContext] = None) -> FunctionHandle:
    return FunctionHandle(CompletedZetaDerivative(order), ctx or DEFAULT_CONTEXT)
