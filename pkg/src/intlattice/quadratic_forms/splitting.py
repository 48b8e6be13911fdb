"""Rational diagonalization of unimodular forms to the identity."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from ..errors import NotUnimodular
from ..linalg import RationalMatrix
from .enumeration import short_vectors
from .form import QForm, is_unimodular, require_positive_definite

# Stop growing the candidate pool past this many vectors (one per ±pair).
POOL_LIMIT = 20000


def _orthogonal_frame(q: QForm, pool: list[tuple[tuple[int, ...], int]], k: int) -> list[int] | None:
    """Indices of ``k`` pairwise orthogonal pool vectors, by bitset clique search."""
    n = q.rank
    g = q.gram.rows()
    w = [tuple(sum(v[i] * g[i][j] for i in range(n) if v[i]) for j in range(n)) for v, _ in pool]
    size = len(pool)
    adj = [0] * size
    for a in range(size):
        wa = w[a]
        for b in range(a + 1, size):
            if not sum(x * y for x, y in zip(wa, pool[b][0]) if y):
                adj[a] |= 1 << b
                adj[b] |= 1 << a

    def dfs(chosen: list[int], cand: int) -> list[int] | None:
        if len(chosen) == k:
            return chosen
        if bin(cand).count("1") < k - len(chosen):
            return None
        while cand:
            low = cand & -cand
            a = low.bit_length() - 1
            cand ^= low
            found = dfs(chosen + [a], cand & adj[a])
            if found is not None:
                return found
        return None

    return dfs([], (1 << size) - 1)


def rational_splitting(q: QForm, denominator_bound: int) -> RationalMatrix | None:
    """Rational ``γ`` with ``γ·gram·γ^t = I`` and denominators ≤ bound, if found.

    Rows are ``w/d`` for pairwise orthogonal integral ``w`` of norm ``d²``.
    ``None`` means the bounded search failed, not that no splitting exists.
    """
    require_positive_definite(q)
    if not is_unimodular(q):
        raise NotUnimodular("rational splitting needs a unimodular form")
    k = q.rank
    if k == 0:
        return RationalMatrix.zeros(0, 0)
    for d_max in range(1, denominator_bound + 1):
        vs = short_vectors(q, d_max * d_max)
        pool = [(v, nv) for v, nv in vs if isqrt(nv) ** 2 == nv]
        if len(pool) < k:
            continue
        frame = _orthogonal_frame(q, pool, k)
        if frame is not None:
            rows = []
            for a in frame:
                v, nv = pool[a]
                d = isqrt(nv)
                rows.append([Fraction(x, d) for x in v])
            gamma = RationalMatrix(rows, ncols=k)
            if gamma @ q.gram @ gamma.T != RationalMatrix.identity(k):
                raise AssertionError("splitting failed verification")
            return gamma
        if len(vs) > POOL_LIMIT:
            break
    return None
