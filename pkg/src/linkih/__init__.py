"""Combinatorial and intersection-homological invariants of polygon linkage spaces."""

from .exact import (
    EpsRational,
    LengthVector,
    NonGenericError,
    SubsetClass,
    classify_subset,
    dominating_index,
    is_d_regular,
    is_generic,
    short_sets,
)
from .kernels import BACKEND

__version__ = "0.1.0"
