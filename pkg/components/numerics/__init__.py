from .linalg import Eigen2, Sym2, dot, eig2_sym, minsp, norm
from .precision import BigComplex, PrecisionContext, abs2, is_finite

__all__ = [
    'BigComplex',
    'Eigen2',
    'PrecisionContext',
    'Sym2',
    'abs2',
    'dot',
    'eig2_sym',
    'is_finite',
    'minsp',
    'norm',
]
