"""Exact blow-down computations for resolved ADE threefold geometries."""

from .polyring import GaussianRational, I, NotHomogeneous, Polynomial, VarTable

__all__ = ["GaussianRational", "I", "NotHomogeneous", "Polynomial", "VarTable"]
__version__ = "0.1.0"
