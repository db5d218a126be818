from .handle import Evaluator, FunctionHandle
from .heatflow import HeatFlowSpec, heat_cutoff, ht_handle, phi, phi_terms
from .polynomial import PolynomialSpec, first_xi_roots, poly_handle, sin_handle
from .quadrature import gauss_legendre
from .special import gamma, xi, xi_derivative_handle, xi_handle, zeta

__all__ = [
    'Evaluator',
    'FunctionHandle',
    'HeatFlowSpec',
    'PolynomialSpec',
    'first_xi_roots',
    'gamma',
    'gauss_legendre',
    'heat_cutoff',
    'ht_handle',
    'phi',
    'phi_terms',
    'poly_handle',
    'sin_handle',
    'xi',
    'xi_derivative_handle',
    'xi_handle',
    'zeta',
]
