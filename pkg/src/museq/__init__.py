"""Mu-sequences, their kernel lattices, exact minimum certification and density bounds."""
from ._backend import NAME as BACKEND
from .core import (
    BudgetExceeded,
    DensityReport,
    KernelLattice,
    MuSequence,
    MuSeqError,
    ValidationVerdict,
    load_sequence,
    dump_sequence,
    validate_mu_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "DensityReport",
    "KernelLattice",
    "MuSequence",
    "MuSeqError",
    "ValidationVerdict",
    "dump_sequence",
    "load_sequence",
    "validate_mu_sequence",
]
