"""Positive definite integral quadratic forms."""

from .decompose import Decomposition, decompose, indecomposable_vectors
from .e8 import e8_basis, e8_fixture_json, e8_gram, kneser_indecomposable_counts, kneser_indecomposable_ranks
from .enumeration import minimum, short_vectors, signed_vectors
from .form import (
    QForm,
    gl_action,
    gram_schmidt,
    is_positive_definite,
    is_unimodular,
    leading_minors,
    lll,
)
from .search import AutomorphismGroup, automorphism_order, isometry
from .splitting import rational_splitting

__all__ = [
    "AutomorphismGroup",
    "Decomposition",
    "QForm",
    "automorphism_order",
    "decompose",
    "e8_basis",
    "e8_fixture_json",
    "e8_gram",
    "gl_action",
    "gram_schmidt",
    "indecomposable_vectors",
    "is_positive_definite",
    "is_unimodular",
    "isometry",
    "kneser_indecomposable_counts",
    "kneser_indecomposable_ranks",
    "leading_minors",
    "lll",
    "minimum",
    "rational_splitting",
    "short_vectors",
    "signed_vectors",
]
