"""Convolution algebras of functions from relational structures into quantales."""
from __future__ import annotations

from .convolution import LiftedAlgebra, WeightedFunction, check_lifted_laws, iterative_star, star_graded
from .errors import ConvAlgError
from .laws import LawReport, LawResult
from .relstruct import RelBiMagma, RelMagma
from .weights import BiQuantale, FiniteLattice, FiniteQuantale

__all__ = ["BiQuantale", "ConvAlgError", "FiniteLattice", "FiniteQuantale", "LawReport", "LawResult",
           "LiftedAlgebra", "RelBiMagma", "RelMagma", "WeightedFunction", "check_lifted_laws",
           "iterative_star", "star_graded"]
