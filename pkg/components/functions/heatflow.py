"""
The heat-flow family H_t(z) = ∫₀^∞ Φ(u) e^(t u²) cos(z u) du.

Φ is the rapidly decaying series Σ (2π²n⁴e^(9u) − 3πn²e^(5u)) exp(−πn²e^(4u)),
so the integral is truncated at a cutoff U where the integrand falls below
the working tolerance and evaluated by Gauss–Legendre on [0, U].
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple, Union

import mpmath

from ..errors import ConvergenceError, DomainError
from ..logger_config import get_logger
from ..numerics import PrecisionContext
from .handle import Evaluator, FunctionHandle, Jet
from .quadrature import scaled_rule

logger = get_logger(__name__)

DEFAULT_CONTEXT = PrecisionContext(digits=50)
DEFAULT_NODES = 32
MAX_DOUBLINGS = 4
T_UPPER_BOUND = 0.5


def _tail_exponent(digits: int) -> float:
    return digits * math.log(10) + 10


def heat_cutoff(digits: int) -> float:
    """Smallest U with π e^(4U) >= digits·ln10 + 10."""
    return math.log(_tail_exponent(digits) / math.pi) / 4


def phi_terms(u: float, digits: int) -> int:
    """Terms of the Φ series needed at ``u`` for a 10^(-digits) truncation error."""
    needed = math.sqrt(_tail_exponent(digits) / (math.pi * math.exp(4 * float(u))))
    return max(1, int(math.ceil(needed)) + 1)


def phi(u, n_terms: int, ctx: PrecisionContext) -> mpmath.mpf:
    if n_terms < 1:
        raise DomainError("Φ needs at least one term")
    with ctx.scope():
        u = mpmath.mpf(u)
        if u < 0:
            raise DomainError("Φ is evaluated for u >= 0 only")
        pi = mpmath.pi
        e4, e5, e9 = mpmath.exp(4 * u), mpmath.exp(5 * u), mpmath.exp(9 * u)
        total = mpmath.mpf(0)
        for n in range(1, n_terms + 1):
            n2 = n * n
            total += (2 * pi * pi * n2 * n2 * e9 - 3 * pi * n2 * e5) * mpmath.exp(-pi * n2 * e4)
        return total


@dataclass(frozen=True)
class HeatFlowSpec:
    t: Union[float, str] = 0.0
    series_terms: int = 8
    upper_cutoff: float = 1.0
    quadrature_nodes: int = DEFAULT_NODES

    def __post_init__(self):
        if float(self.t) > T_UPPER_BOUND:
            raise DomainError(f"heat-flow time t must be <= {T_UPPER_BOUND}, got {self.t}")
        if self.series_terms < 1:
            raise DomainError("series_terms must be positive")
        if not self.upper_cutoff > 0:
            raise DomainError("upper_cutoff must be positive")
        if self.quadrature_nodes < 1:
            raise DomainError("quadrature_nodes must be positive")

    @classmethod
    def for_digits(cls, t: Union[float, str], digits: int, quadrature_nodes: int = DEFAULT_NODES) -> "HeatFlowSpec":
        """Series length and cutoff sized for ``digits``; Φ converges slowest at u = 0."""
        return cls(
            t=t,
            series_terms=phi_terms(0.0, digits),
            upper_cutoff=heat_cutoff(digits),
            quadrature_nodes=quadrature_nodes,
        )


@lru_cache(maxsize=32)
def _weighted_nodes(spec: HeatFlowSpec, n: int, dps: int) -> Tuple[List[mpmath.mpf], List[mpmath.mpf]]:
    """Nodes u_k and combined weights w_k·Φ(u_k)·e^(t u_k²)."""
    ctx = PrecisionContext(digits=max(dps, 15), guard_digits=0)
    with ctx.scope():
        nodes, weights = scaled_rule(n, 0, mpmath.mpf(spec.upper_cutoff), dps)
        t = mpmath.mpf(spec.t)
        combined = [w * phi(u, spec.series_terms, ctx) * mpmath.exp(t * u * u) for u, w in zip(nodes, weights)]
        return nodes, combined


class HeatFlow(Evaluator):
    def __init__(self, spec: HeatFlowSpec):
        self.spec = spec
        self.name = f"heat_t{spec.t}"

    def _integrate(self, z, n: int, dps: int) -> Jet:
        nodes, weights = _weighted_nodes(self.spec, n, dps)
        g = g1 = g2 = mpmath.mpc(0)
        for u, c in zip(nodes, weights):
            zu = z * u
            cs, sn = mpmath.cos(zu), mpmath.sin(zu)
            g += c * cs
            g1 -= c * u * sn
            g2 -= c * u * u * cs
        return g, g1, g2

    def jet(self, z, ctx) -> Jet:
        dps = ctx.working_digits
        tol = mpmath.mpf(10) ** (-(ctx.digits / 2))
        n = self.spec.quadrature_nodes
        previous = self._integrate(z, n, dps)
        for _ in range(MAX_DOUBLINGS):
            n *= 2
            current = self._integrate(z, n, dps)
            if all(abs(c - p) <= tol * max(1, abs(c)) for c, p in zip(current, previous)):
                return current
            previous = current
        logger.warning(f"Quadrature did not stabilize at z={mpmath.nstr(z, 10)} with {n} nodes")
        raise ConvergenceError("quadrature failure")

    def describe(self) -> str:
        s = self.spec
        return f"{self.name} N={s.series_terms} U={s.upper_cutoff:.6f} nodes={s.quadrature_nodes}"


def ht_handle(spec: HeatFlowSpec, ctx: Optional[PrecisionContext] = None) -> FunctionHandle:
    return FunctionHandle(HeatFlow(spec), ctx or DEFAULT_CONTEXT)
