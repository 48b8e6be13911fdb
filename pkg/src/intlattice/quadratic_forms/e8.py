"""The E8 lattice (pinned fixture) and Kneser's list of small indecomposables."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from ..linalg import Matrix, RationalMatrix
from .form import QForm

# Ranks (≤ 16) of indecomposable positive definite unimodular lattices and how
# many there are in each rank. Cited data, not recomputed here.
KNESER_COUNTS = {1: 1, 8: 1, 12: 1, 14: 1, 15: 1, 16: 2}


@lru_cache(maxsize=1)
def _fixture() -> dict:
    text = resources.files("intlattice.data").joinpath("e8.json").read_text()
    return json.loads(text)


def e8_gram() -> QForm:
    """Gram matrix of simple roots in the even-coordinate model."""
    m = Matrix.from_json(_fixture()["gram"])
    return QForm(8, m)


def e8_basis() -> RationalMatrix:
    """Rows are the basis vectors inside ``Q^8`` with the standard dot product."""
    return RationalMatrix.from_json(_fixture()["basis"])


def e8_fixture_json() -> dict:
    return dict(_fixture())


def kneser_indecomposable_ranks() -> frozenset[int]:
    return frozenset(KNESER_COUNTS)


def kneser_indecomposable_counts() -> dict[int, int]:
    return dict(KNESER_COUNTS)
