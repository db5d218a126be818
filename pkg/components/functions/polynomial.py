"""
Polynomial and sine handles.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import mpmath

from ..errors import DomainError
from ..numerics import PrecisionContext
from .handle import Evaluator, FunctionHandle, Jet

DEFAULT_CONTEXT = PrecisionContext(digits=50)

# Ordinates of the first four zeros of ξ above the real axis.
XI_ZERO_ORDINATES = (
    "14.13472514173",
    "21.02203963877",
    "25.01085758014",
    "30.42487612585",
)


def first_xi_roots(count: int = 8) -> Tuple[str, ...]:
    """The first ``count`` zeros of ξ as strings, ordered +t1, -t1, +t2, -t2, ..."""
    roots = []
    for ordinate in XI_ZERO_ORDINATES:
        roots.append(f"0.5+{ordinate}j")
        roots.append(f"0.5-{ordinate}j")
    if count > len(roots):
        raise DomainError(f"only {len(roots)} tabulated zeros are available")
    return tuple(roots[:count])


@dataclass(frozen=True)
class PolynomialSpec:
    """
    A polynomial given either by its roots (monic) or by its coefficients,
    highest degree first.
    """

    roots: Tuple = field(default_factory=tuple)
    coefficients: Tuple = field(default_factory=tuple)

    def __post_init__(self):
        has_roots = len(self.roots) > 0
        has_coeffs = len(self.coefficients) > 0
        if not has_roots and not has_coeffs:
            raise DomainError("polynomial needs a non-empty root or coefficient list")
        if has_roots and has_coeffs:
            raise DomainError("give either roots or coefficients, not both")
        if has_coeffs:
            if len(self.coefficients) < 2:
                raise DomainError("polynomial degree must be at least 1")
            if mpmath.mpmathify(self.coefficients[0]) == 0:
                raise DomainError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.roots) if self.roots else len(self.coefficients) - 1


class RootProductPolynomial(Evaluator):
    """Π(z − r_k), differentiated through the product rule."""

    def __init__(self, roots: Sequence[mpmath.mpc]):
        self.roots = tuple(roots)
        self.name = f"poly{len(self.roots)}"

    def jet(self, z, ctx) -> Jet:
        p, dp, ddp = mpmath.mpc(1), mpmath.mpc(0), mpmath.mpc(0)
        for r in self.roots:
            factor = z - r
            ddp = ddp * factor + 2 * dp
            dp = dp * factor + p
            p = p * factor
        return p, dp, ddp

    def value(self, z, ctx):
        p = mpmath.mpc(1)
        for r in self.roots:
            p *= z - r
        return p

    def describe(self) -> str:
        return f"{self.name} roots=" + ";".join(mpmath.nstr(r, 15) for r in self.roots)


class HornerPolynomial(Evaluator):
    """Σ c_k z^(n-k) with value and derivatives from one Horner sweep."""

    def __init__(self, coefficients: Sequence[mpmath.mpc]):
        self.coefficients = tuple(coefficients)
        self.name = f"poly{len(self.coefficients) - 1}"

    def jet(self, z, ctx) -> Jet:
        p, dp, ddp = mpmath.mpc(0), mpmath.mpc(0), mpmath.mpc(0)
        for c in self.coefficients:
            ddp = ddp * z + 2 * dp
            dp = dp * z + p
            p = p * z + c
        return p, dp, ddp

    def value(self, z, ctx):
        return mpmath.polyval(list(self.coefficients), z)

    def describe(self) -> str:
        return f"{self.name} coefficients=" + ";".join(mpmath.nstr(c, 15) for c in self.coefficients)


class Sine(Evaluator):
    name = "sin"

    def jet(self, z, ctx) -> Jet:
        s = mpmath.sin(z)
        return s, mpmath.cos(z), -s

    def value(self, z, ctx):
        return mpmath.sin(z)


def poly_handle(spec: PolynomialSpec, ctx: Optional[PrecisionContext] = None) -> FunctionHandle:
    ctx = ctx or DEFAULT_CONTEXT
    if spec.roots:
        roots = [ctx.complex(r) for r in spec.roots]
        return FunctionHandle(RootProductPolynomial(roots), ctx)
    coefficients = [ctx.complex(c) for c in spec.coefficients]
    return FunctionHandle(HornerPolynomial(coefficients), ctx)


def sin_handle(ctx: Optional[PrecisionContext] = None) -> FunctionHandle:
    return FunctionHandle(Sine(), ctx or DEFAULT_CONTEXT)
