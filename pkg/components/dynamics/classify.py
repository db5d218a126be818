"""
Assigning a trajectory's limit to one of the known roots.
"""

from typing import Sequence

import mpmath

from ..errors import AmbiguousMatchError, DomainError
from .trajectory import Outcome, Trajectory

# Labels below zero; root labels are the root's index.
CRITICAL_POINT = -1
DIVERGENT = -2
UNMATCHED = -3

LABEL_NAMES = {
    CRITICAL_POINT: "CriticalPoint",
    DIVERGENT: "Divergent",
    UNMATCHED: "Unmatched",
}


def label_name(label: int) -> str:
    return LABEL_NAMES.get(label, f"root{label}")


def match_root(z, roots: Sequence, tol) -> int:
    """Index of the unique root within ``tol`` of ``z``, else UNMATCHED."""
    if not tol > 0:
        raise DomainError("tol must be positive")
    hits = [i for i, r in enumerate(roots) if abs(mpmath.mpc(z) - mpmath.mpc(r)) <= tol]
    if len(hits) > 1:
        raise AmbiguousMatchError("ambiguous match")
    return hits[0] if hits else UNMATCHED


def classify_limit(trajectory: Trajectory, roots: Sequence, tol) -> int:
    if not tol > 0:
        raise DomainError("tol must be positive")
    if trajectory.outcome == Outcome.DIVERGED:
        return DIVERGENT
    if trajectory.outcome == Outcome.CONVERGED_CRITICAL:
        return CRITICAL_POINT
    if trajectory.outcome == Outcome.UNRESOLVED:
        return UNMATCHED
    return match_root(trajectory.terminal, roots, tol)
