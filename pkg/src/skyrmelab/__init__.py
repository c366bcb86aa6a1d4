"""Numerical laboratory for equivariant radial field equations.

The package evolves wave-map, Skyrme-type and omega-meson-coupled angular
fields in their semilinear 5+1 radial form u = r v, checks the algebraic
structure of the coefficient functions, and measures homogeneous Sobolev and
Besov norms of radial profiles by exact radial Fourier transforms.
"""
from .errors import ConfigError, ContractError, DomainError

__all__ = ["ConfigError", "ContractError", "DomainError"]

__version__ = "0.1.0"
