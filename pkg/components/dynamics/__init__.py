from .bnqn import BNQNParams, GradHess, bnqn_run, bnqn_step, default_deltas, grad_hess_F, is_root
from .classify import CRITICAL_POINT, DIVERGENT, UNMATCHED, classify_limit, label_name, match_root
from .comparators import (
    METHODS,
    newton_run,
    newton_step,
    nu_run,
    nu_step,
    random_alphas,
    random_relaxed_run,
    relaxed_newton_step,
    relaxed_run,
    run_method,
)
from .trajectory import IterationRecord, Outcome, Trajectory, read_csv, trajectory_csv, write_csv

__all__ = [
    'BNQNParams',
    'CRITICAL_POINT',
    'DIVERGENT',
    'GradHess',
    'IterationRecord',
    'METHODS',
    'Outcome',
    'Trajectory',
    'UNMATCHED',
    'bnqn_run',
    'bnqn_step',
    'classify_limit',
    'default_deltas',
    'grad_hess_F',
    'is_root',
    'label_name',
    'match_root',
    'newton_run',
    'newton_step',
    'nu_run',
    'nu_step',
    'random_alphas',
    'random_relaxed_run',
    'read_csv',
    'relaxed_newton_step',
    'relaxed_run',
    'run_method',
    'trajectory_csv',
    'write_csv',
]
