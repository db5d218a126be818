"""
Gauss–Legendre nodes and weights at arbitrary precision.
"""

from functools import lru_cache
from typing import Tuple

import mpmath

from ..errors import ConvergenceError

NEWTON_ITERATIONS = 100


def _legendre(n: int, x: mpmath.mpf):
    """P_n(x) and P_n'(x) by the three-term recurrence."""
    p_prev, p = mpmath.mpf(1), x
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = n * (x * p - p_prev) / (x * x - 1)
    return p, dp


@lru_cache(maxsize=64)
def gauss_legendre(n: int, dps: int) -> Tuple[Tuple[mpmath.mpf, ...], Tuple[mpmath.mpf, ...]]:
    """
    Nodes and weights of the n-point rule on [-1, 1], accurate to ``dps``
    digits. Nodes are returned in increasing order.
    """
    if n < 1:
        raise ValueError("node count must be positive")
    with mpmath.workdps(dps + 10):
        tol = mpmath.mpf(10) ** (-dps - 5)
        nodes = [mpmath.mpf(0)] * n
        weights = [mpmath.mpf(0)] * n
        for i in range((n + 1) // 2):
            x = mpmath.cos(mpmath.pi * (i + mpmath.mpf(0.75)) / (n + mpmath.mpf(0.5)))
            for _ in range(NEWTON_ITERATIONS):
                p, dp = _legendre(n, x)
                dx = p / dp
                x -= dx
                if abs(dx) < tol:
                    break
            else:
                raise ConvergenceError(f"Legendre node {i} of {n} did not converge")
            _, dp = _legendre(n, x)
            w = 2 / ((1 - x * x) * dp * dp)
            nodes[i], nodes[n - 1 - i] = -x, x
            weights[i] = weights[n - 1 - i] = w
        if n % 2 == 1:
            nodes[n // 2] = mpmath.mpf(0)
        return tuple(nodes), tuple(weights)


def scaled_rule(n: int, a, b, dps: int):
    """The n-point rule mapped to [a, b]."""
    nodes, weights = gauss_legendre(n, dps)
    half = (mpmath.mpf(b) - a) / 2
    mid = (mpmath.mpf(b) + a) / 2
    return [mid + half * x for x in nodes], [half * w for w in weights]
