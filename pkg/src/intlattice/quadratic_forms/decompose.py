"""Eichler decomposition of a positive definite lattice into indecomposables."""

from __future__ import annotations

from dataclasses import dataclass

from ..linalg import Matrix, Sublattice
from .enumeration import short_vectors
from .form import QForm, lll, require_positive_definite

Vector = tuple[int, ...]


@dataclass(frozen=True)
class Decomposition:
    """Rows of ``transform`` are bases of the blocks, concatenated in order."""

    transform: Matrix
    blocks: tuple[QForm, ...]

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(b.rank for b in self.blocks)

    def block_diagonal(self) -> Matrix:
        n = sum(self.ranks)
        rows = [[0] * n for _ in range(n)]
        off = 0
        for b in self.blocks:
            for i in range(b.rank):
                for j in range(b.rank):
                    rows[off + i][off + j] = b.gram[i, j]
            off += b.rank
        return Matrix(rows, ncols=n)

    def verify(self, q: QForm) -> bool:
        t = self.transform
        return t.is_unimodular() and t @ q.gram @ t.T == self.block_diagonal()

    def to_json(self) -> dict:
        return {
            "transform": self.transform.to_json(),
            "blocks": [b.gram.to_json() for b in self.blocks],
            "ranks": [str(r) for r in self.ranks],
        }


def indecomposable_vectors(q: QForm, bound: int) -> list[Vector]:
    """Vectors of norm ≤ bound (one per ±pair) that are not ``a + b`` with ``a ⊥ b``, ``a, b ≠ 0``.

    ``v`` decomposes iff some ``y`` has ``0 < N(y) < N(v)`` and ``y·v = N(y)``.
    """
    vs = short_vectors(q, bound)
    g = q.gram.rows()
    n = q.rank
    w = {v: tuple(sum(v[i] * g[i][j] for i in range(n) if v[i]) for j in range(n)) for v, _ in vs}
    out = []
    for v, nv in vs:
        wv = w[v]
        decomposable = False
        for y, ny in vs:
            if ny >= nv:
                break
            c = sum(a * b for a, b in zip(wv, y))
            # y or -y
            if c == ny or c == -ny:
                decomposable = True
                break
        if not decomposable:
            out.append(v)
    return out


def _components(q: QForm, vectors: list[Vector]) -> list[list[Vector]]:
    parent = list(range(len(vectors)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(len(vectors)):
        for b in range(a + 1, len(vectors)):
            if q.pair(vectors[a], vectors[b]):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[Vector]] = {}
    for a, v in enumerate(vectors):
        groups.setdefault(find(a), []).append(v)
    return list(groups.values())


def decompose(q: QForm) -> Decomposition:
    """Orthogonal splitting into indecomposable blocks.

    Indecomposable vectors up to the largest LLL-reduced basis norm generate
    the lattice; their connected components under nonzero pairing span the
    Eichler components. The result is verified before it is returned.
    """
    require_positive_definite(q)
    n = q.rank
    if n == 0:
        return Decomposition(Matrix.zeros(0, 0), ())
    _, red = lll(q)
    bound = max(red.gram[i, i] for i in range(n))
    comps = _components(q, indecomposable_vectors(q, bound))
    parts = []
    for comp in comps:
        basis = Sublattice.span(n, comp).basis.T  # rows
        sub = QForm(basis.nrows, basis @ q.gram @ basis.T)
        u, red_sub = lll(sub)
        parts.append((u @ basis, red_sub))
    parts.sort(key=lambda p: (p[1].rank, p[1].gram.rows(), p[0].rows()))
    rows = [r for b, _ in parts for r in b.rows()]
    d = Decomposition(Matrix(rows, ncols=n), tuple(p[1] for p in parts))
    if not d.verify(q):
        raise AssertionError("decomposition failed verification")
    return d
