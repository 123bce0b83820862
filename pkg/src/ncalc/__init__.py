"""Exact first-order differential calculi, module duals and Cartan pairs over finite-dimensional algebras."""

from .algebra import Algebra, builtin, corpus, validate_algebra
from .bimodule import Bimodule, BimoduleMap
from .calculus import FODC, quotient_fodc, universal_kernel_calculus, validate_fodc
from .checks import InvariantViolation, Report
from .duality import CartanPair, cartan_from_fodc, reconstruct_fodc, validate_cartan_pair
from .linalg import QQ, Field, Matrix, Subspace

__all__ = [
    "Algebra", "Bimodule", "BimoduleMap", "CartanPair", "FODC", "Field", "InvariantViolation", "Matrix", "QQ",
    "Report", "Subspace", "builtin", "cartan_from_fodc", "corpus", "quotient_fodc", "reconstruct_fodc",
    "universal_kernel_calculus", "validate_algebra", "validate_cartan_pair", "validate_fodc",
]
