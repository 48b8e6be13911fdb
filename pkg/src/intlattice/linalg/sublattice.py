"""Sublattices of Z^r stored by their canonical (column HNF) basis."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import DimensionMismatch, NotContained
from .matrix import Matrix
from .normalforms import hnf_basis, integer_solve, kernel, snf


class Infinite:
    """Index of a sublattice of strictly smaller rank."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"


INFINITE = Infinite()


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of ``Z^ambient_rank``; ``basis`` columns are in HNF.

    Build instances with :meth:`span` (any generating set) rather than the
    raw constructor, which trusts its input.
    """

    ambient_rank: int
    basis: Matrix

    @classmethod
    def span(cls, ambient_rank: int, generators: Matrix | Iterable[Sequence[int]]) -> "Sublattice":
        if not isinstance(generators, Matrix):
            gens = [tuple(v) for v in generators]
            if not gens:
                return cls.zero(ambient_rank)
            generators = Matrix.from_columns(gens, nrows=ambient_rank)
        if generators.nrows != ambient_rank:
            raise DimensionMismatch("generator length differs from ambient rank")
        return cls(ambient_rank, hnf_basis(generators))

    @classmethod
    def full(cls, r: int) -> "Sublattice":
        return cls(r, Matrix.identity(r))

    @classmethod
    def zero(cls, r: int) -> "Sublattice":
        return cls(r, Matrix.zeros(r, 0))

    @property
    def rank(self) -> int:
        return self.basis.ncols

    def vectors(self) -> tuple[tuple[int, ...], ...]:
        return self.basis.columns()

    def is_zero(self) -> bool:
        return self.rank == 0

    def is_full(self) -> bool:
        return self == Sublattice.full(self.ambient_rank)

    def scaled(self, n: int) -> "Sublattice":
        return Sublattice.span(self.ambient_rank, self.basis * n)

    def image(self, m: Matrix) -> "Sublattice":
        """Image under the linear map ``m`` (acting on column vectors)."""
        return Sublattice.span(m.nrows, m @ self.basis)

    def coordinates(self, v: Sequence[int] | Matrix) -> Matrix | None:
        """Coordinates of ``v`` (column or matrix of columns) in this basis."""
        b = v if isinstance(v, Matrix) else Matrix.column_vector(v)
        if self.rank == 0:
            return Matrix.zeros(0, b.ncols) if b.is_zero() else None
        return integer_solve(self.basis, b)

    def __add__(self, other: "Sublattice") -> "Sublattice":
        return sublattice_sum(self, other)

    def __and__(self, other: "Sublattice") -> "Sublattice":
        return intersect(self, other)

    def __le__(self, other: "Sublattice") -> bool:
        return contains(other, self)

    def __lt__(self, other: "Sublattice") -> bool:
        return self != other and contains(other, self)

    def to_json(self) -> dict:
        return {"ambient_rank": str(self.ambient_rank), "basis": self.basis.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "Sublattice":
        r = int(obj["ambient_rank"])
        return cls.span(r, Matrix.from_json(obj["basis"]))


def _check(a: Sublattice, b: Sublattice) -> None:
    if a.ambient_rank != b.ambient_rank:
        raise DimensionMismatch(f"ambient ranks {a.ambient_rank} and {b.ambient_rank} differ")


def sublattice_sum(a: Sublattice, b: Sublattice) -> Sublattice:
    _check(a, b)
    return Sublattice.span(a.ambient_rank, a.basis.hstack(b.basis))


def intersect(a: Sublattice, b: Sublattice) -> Sublattice:
    _check(a, b)
    r = a.ambient_rank
    if a.rank == 0 or b.rank == 0:
        return Sublattice.zero(r)
    if a.is_full():
        return b
    if b.is_full():
        return a
    # x = A s = B t  <=>  [A | -B] (s; t) = 0
    ker = kernel(a.basis.hstack(-b.basis))
    if ker.ncols == 0:
        return Sublattice.zero(r)
    s_part = ker.submatrix(range(a.rank), range(ker.ncols))
    return Sublattice.span(r, a.basis @ s_part)


def member(a: Sublattice, v: Sequence[int]) -> bool:
    if len(v) != a.ambient_rank:
        raise DimensionMismatch("vector length differs from ambient rank")
    return a.coordinates(v) is not None


def contains(a: Sublattice, b: Sublattice) -> bool:
    """True iff ``b`` is a sublattice of ``a``."""
    _check(a, b)
    if b.rank == 0:
        return True
    if b.rank > a.rank:
        return False
    return a.coordinates(b.basis) is not None


def saturation(s: Sublattice) -> Sublattice:
    """Smallest saturated sublattice containing ``s`` (i.e. ``Q s ∩ Z^r``)."""
    if s.rank == 0:
        return s
    # u @ B @ v = d  =>  B = u^-1 d v^-1; Q-span of B is spanned by the first
    # rank columns of u^-1, and those columns span a saturated lattice.
    d, u, _ = snf(s.basis)
    u_inv = u.inverse().to_integer()
    cols = [u_inv.column(j) for j in range(s.rank)]
    return Sublattice.span(s.ambient_rank, cols)


def is_saturated(s: Sublattice) -> bool:
    return saturation(s) == s


def index(outer: Sublattice, inner: Sublattice) -> int | Infinite:
    """``|outer / inner|``; :data:`INFINITE` when the ranks differ."""
    _check(outer, inner)
    coords = outer.coordinates(inner.basis) if inner.rank else Matrix.zeros(outer.rank, 0)
    if coords is None:
        raise NotContained("inner sublattice is not contained in outer")
    if inner.rank != outer.rank:
        return INFINITE
    if outer.rank == 0:
        return 1
    return abs(coords.det())


def orthogonal_complement(s: Sublattice, gram: Matrix) -> Sublattice:
    """``{x in Z^r : x^t gram v = 0 for all v in s}``, always saturated."""
    r = s.ambient_rank
    if s.rank == 0:
        return Sublattice.full(r)
    return Sublattice(r, kernel(s.basis.T @ gram.T))


def direct_sum_power(s: Sublattice, k: int) -> Sublattice:
    """``s^{⊕k}`` inside ``(Z^r)^{⊕k}`` with copy-major coordinates."""
    r = s.ambient_rank
    cols = []
    for copy in range(k):
        for v in s.vectors():
            col = [0] * (r * k)
            col[copy * r:(copy + 1) * r] = v
            cols.append(col)
    # block-diagonal copies of an HNF basis are again in HNF
    return Sublattice(r * k, Matrix.from_columns(cols, nrows=r * k)) if cols else Sublattice.zero(r * k)
