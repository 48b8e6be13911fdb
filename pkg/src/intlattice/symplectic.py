"""Unimodular symplectic lattices, isotropic completion and Picard–Lefschetz operators.

Conventions. Vectors are integer columns; ``E(x, y) = x^t @ gram @ y``.
The standard space of genus ``g`` has basis ``e_1..e_g, f_1..f_g`` with
``E(e_i, f_j) = δ_ij``. A symplectic basis ``(δ; γ)`` satisfies
``E(δ_i, γ_j) = +δ_ij`` (the opposite sign from ``γ·δ = -1`` conventions is a
relabelling, not a different lattice). The Picard–Lefschetz sign is ε = +1:
``T(x) = x + Σ E(x, δ_i) δ_i``.

Products ``H^{⊕k}`` use copy-major coordinates: coordinate ``c*2g + j`` is
basis vector ``j`` of copy ``c``. A matrix ``α ∈ M_k(Z)`` acts across copies
as ``kron(α, I_2g)`` while the form acts within copies as ``kron(I_k, gram)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DimensionMismatch, NotIsotropic, NotSaturated, NotUnimodular
from .linalg import Matrix, Sublattice, hnf, is_saturated, kernel

Vector = tuple[int, ...]


@dataclass(frozen=True)
class SymplecticSpace:
    rank: int
    gram: Matrix

    def __post_init__(self):
        if self.rank % 2 or self.gram.shape != (self.rank, self.rank):
            raise DimensionMismatch("symplectic gram must be square of even size")
        if not self.gram.is_alternating():
            raise ValueError("gram is not alternating")
        if abs(self.gram.det()) != 1:
            raise NotUnimodular("symplectic gram is not unimodular")

    @property
    def genus(self) -> int:
        return self.rank // 2

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        g = self.gram
        return sum(x[i] * g[i, j] * y[j] for i in range(self.rank) for j in range(self.rank) if x[i] and y[j])

    def restricted_gram(self, vectors: Sequence[Sequence[int]]) -> Matrix:
        b = Matrix.from_columns(vectors, nrows=self.rank) if vectors else Matrix.zeros(self.rank, 0)
        return b.T @ self.gram @ b

    def full(self) -> Sublattice:
        return Sublattice.full(self.rank)

    def to_json(self) -> dict:
        return {"rank": str(self.rank), "gram": self.gram.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "SymplecticSpace":
        return cls(int(obj["rank"]), Matrix.from_json(obj["gram"]))


@dataclass(frozen=True)
class SymplecticBasis:
    deltas: tuple[Vector, ...]
    gammas: tuple[Vector, ...]

    def vectors(self) -> tuple[Vector, ...]:
        return self.deltas + self.gammas

    def is_valid(self, space: SymplecticSpace) -> bool:
        g = len(self.deltas)
        if len(self.gammas) != g or 2 * g != space.rank:
            return False
        e = space.pair
        for i in range(g):
            for j in range(g):
                if e(self.deltas[i], self.deltas[j]) or e(self.gammas[i], self.gammas[j]):
                    return False
                if e(self.deltas[i], self.gammas[j]) != int(i == j):
                    return False
        return True


@dataclass(frozen=True)
class MonodromyOperator:
    matrix: Matrix
    cycles: tuple[Vector, ...] = field(default=())

    def __call__(self, x: Sequence[int]) -> Vector:
        return (self.matrix @ Matrix.column_vector(x)).column(0)

    def preserves(self, gram: Matrix) -> bool:
        return self.matrix.T @ gram @ self.matrix == gram

    def power(self, m: int) -> "MonodromyOperator":
        return MonodromyOperator(self.matrix ** m, self.cycles)

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "cycles": [[str(x) for x in c] for c in self.cycles],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MonodromyOperator":
        cycles = tuple(tuple(int(x) for x in c) for c in obj.get("cycles", []))
        return cls(Matrix.from_json(obj["matrix"]), cycles)


def standard_space(g: int) -> tuple[SymplecticSpace, SymplecticBasis]:
    if g < 1:
        raise ValueError("genus must be at least 1")
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(g):
        rows[i][g + i] = 1
        rows[g + i][i] = -1
    space = SymplecticSpace(n, Matrix(rows, ncols=n))
    unit = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    return space, SymplecticBasis(tuple(unit[:g]), tuple(unit[g:]))


def power_space(space: SymplecticSpace, k: int) -> SymplecticSpace:
    """``(H, E)^{⊕k}`` in copy-major coordinates."""
    return SymplecticSpace(space.rank * k, Matrix.identity(k).kron(space.gram))


def copy_action(alpha: Matrix, rank: int) -> Matrix:
    """Matrix of ``α ∈ M_k(Z)`` acting on ``H^{⊕k}`` where ``H`` has the given rank."""
    return alpha.kron(Matrix.identity(rank))


def is_isotropic(space: SymplecticSpace, u: Sublattice) -> bool:
    return space.restricted_gram(u.vectors()).is_zero()


def isotropic_completion_basis(space: SymplecticSpace, u: Sublattice) -> list[Vector]:
    """Vectors ``u'_j`` with ``E(u_i, u'_j) = δ_ij`` and ``E(u'_i, u'_j) = 0``.

    ``u_i`` are the canonical basis vectors of ``u``. Surjectivity of
    ``x ↦ (E(u_i, x))_i`` (``u`` saturated, form unimodular) yields preimages
    of the unit vectors; a triangular correction along ``u`` then makes the
    preimages mutually isotropic.
    """
    if u.ambient_rank != space.rank:
        raise DimensionMismatch("sublattice lives in a different ambient lattice")
    if not is_saturated(u):
        raise NotSaturated("isotropic completion needs a saturated sublattice")
    if not is_isotropic(space, u):
        raise NotIsotropic("the form does not vanish on the sublattice")
    r = u.rank
    if r == 0:
        return []
    basis = u.vectors()
    a = u.basis.T @ space.gram  # rows: E(u_i, -)
    h, t = hnf(a)
    # a @ t = [I_r | 0] because a is onto Z^r
    if h.submatrix(range(r), range(r)) != Matrix.identity(r):
        raise NotSaturated("pairing map is not surjective")
    xs = [list(t.column(j)) for j in range(r)]
    q = space.restricted_gram(xs)
    for j in range(r):
        for i in range(j):
            c = q[i, j]
            if c:
                xs[j] = [x + c * b for x, b in zip(xs[j], basis[i])]
    return [tuple(x) for x in xs]


def complete_isotropic(space: SymplecticSpace, u: Sublattice) -> Sublattice:
    """A sublattice ``u'`` with ``u ⊕ u'`` unimodular for the restricted form."""
    vecs = isotropic_completion_basis(space, u)
    return Sublattice.span(space.rank, vecs) if vecs else Sublattice.zero(space.rank)


def restricted_determinant(space: SymplecticSpace, *parts: Sublattice) -> int:
    vecs = [v for p in parts for v in p.vectors()]
    return space.restricted_gram(vecs).det()


def monodromy_from_cycles(space: SymplecticSpace, deltas: Sequence[Sequence[int]]) -> MonodromyOperator:
    """``x ↦ x + Σ_i E(x, δ_i) δ_i``."""
    n = space.rank
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    cycles = []
    for d in deltas:
        d = tuple(d)
        if len(d) != n:
            raise DimensionMismatch("cycle length differs from lattice rank")
        cycles.append(d)
        # E(x, δ) = Σ_j x_j (gram @ δ)_j
        w = [sum(space.gram[j, l] * d[l] for l in range(n)) for j in range(n)]
        for i in range(n):
            if d[i]:
                for j in range(n):
                    rows[i][j] += d[i] * w[j]
    return MonodromyOperator(Matrix(rows, ncols=n), tuple(cycles))


def transvection(space: SymplecticSpace, delta: Sequence[int]) -> MonodromyOperator:
    return monodromy_from_cycles(space, [delta])


def invariants(op: MonodromyOperator) -> Sublattice:
    """``Ker(T - id)``; saturated by construction."""
    n = op.matrix.nrows
    return Sublattice(n, kernel(op.matrix - Matrix.identity(n)))


def coinvariant_image(op: MonodromyOperator) -> Sublattice:
    """``Im(T - id)`` as a sublattice (not saturated in general)."""
    n = op.matrix.nrows
    return Sublattice.span(n, op.matrix - Matrix.identity(n))


def invariants_stable_under_powers(op: MonodromyOperator, m: int) -> bool:
    if m < 1:
        raise ValueError("power must be at least 1")
    return invariants(op) == invariants(op.power(m))
