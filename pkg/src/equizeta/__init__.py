"""Equivariant zeta functions and orbit invariants of quasihomogeneous singularities."""

from .burnside import BurnsideElement, CyclotomicFunction, ExtBurnsideElement
from .pipeline import ProblemSpec, analyze, classical, verify
from .qhpoly import ExtendedGroup, QuasiPolynomial, WeightSystem
from .repr_ring import CharacterSpace, NegSeries, exp_map, log_map
from .torsion_lattice import FiniteDiagonalGroup, TorsionVector, canonicalize

__all__ = [
    "BurnsideElement", "CharacterSpace", "CyclotomicFunction", "ExtBurnsideElement",
    "ExtendedGroup", "FiniteDiagonalGroup", "NegSeries", "ProblemSpec", "QuasiPolynomial",
    "TorsionVector", "WeightSystem", "analyze", "canonicalize", "classical", "exp_map",
    "log_map", "verify",
]
__version__ = "0.1.0"
