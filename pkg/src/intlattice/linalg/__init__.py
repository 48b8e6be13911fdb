"""Exact integer and rational linear algebra."""

from .matrix import Matrix, RationalMatrix
from .normalforms import (
    elementary_divisors,
    hnf,
    hnf_basis,
    integer_solve,
    kernel,
    rank,
    rational_solve,
    snf,
    xgcd,
)
from .sublattice import (
    INFINITE,
    Infinite,
    Sublattice,
    contains,
    direct_sum_power,
    index,
    intersect,
    is_saturated,
    member,
    orthogonal_complement,
    saturation,
    sublattice_sum,
)

__all__ = [
    "INFINITE",
    "Infinite",
    "Matrix",
    "RationalMatrix",
    "Sublattice",
    "contains",
    "direct_sum_power",
    "elementary_divisors",
    "hnf",
    "hnf_basis",
    "index",
    "integer_solve",
    "intersect",
    "is_saturated",
    "kernel",
    "member",
    "orthogonal_complement",
    "rank",
    "rational_solve",
    "saturation",
    "snf",
    "sublattice_sum",
    "xgcd",
]
