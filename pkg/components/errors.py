"""
Exception types shared by the engine packages.

Library code raises these; orchestration code (sweeps, seed scans, the CLI)
catches them, logs, and turns them into labels or exit codes.
"""

from typing import Optional


class XibasinError(Exception):
    """Base class for every error raised by xibasin."""


class DomainError(XibasinError, ValueError):
    """An operand outside the domain of an operation (poles, bad specs, ...)."""


class AmbiguousMatchError(DomainError):
    """More than one candidate root lies within the matching tolerance."""


class ConvergenceError(XibasinError, RuntimeError):
    """A numerical procedure failed to reach its target."""


class ConfigError(XibasinError, ValueError):
    """Invalid run configuration; ``key`` names the offending entry."""

    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(message)
        self.key = key


class GatedRunError(XibasinError):
    """A run needs an explicit opt-in (``--allow-long``)."""
