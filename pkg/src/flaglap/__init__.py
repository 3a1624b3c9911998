"""Exact-arithmetic spectra of weighted flag-complex Laplacians over
finite fields: q-binomial combinatorics, subspace inclusion matrices,
block diagonalization of the 0-Laplacian, exact block spectra, and
large-q eigenvalue predictions verified over prime sweeps."""

__version__ = "0.1.0"

from .errors import DomainError, FlaglapError, IntegrityError, ResourceRefusal
from .qcomb import c_coefficient, c_short, complete_flag_count, q_binomial
from .subspaces import Flag, Subspace, enumerate_flags, enumerate_subspaces

__all__ = [
    "DomainError",
    "Flag",
    "FlaglapError",
    "IntegrityError",
    "ResourceRefusal",
    "Subspace",
    "__version__",
    "c_coefficient",
    "c_short",
    "complete_flag_count",
    "enumerate_flags",
    "enumerate_subspaces",
    "q_binomial",
]
