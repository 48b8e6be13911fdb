"""Fincke–Pohst enumeration of short lattice vectors with exact bounds."""

from __future__ import annotations

from fractions import Fraction
from math import floor, isqrt

from ..errors import NotPositiveDefinite
from ..linalg import Matrix
from .form import QForm, gram_schmidt, is_positive_definite, lll

Vector = tuple[int, ...]


def _enumerate_coordinates(mu, b, bound: int) -> list[Vector]:
    """Nonzero ``y`` with ``Σ b_i (y_i + Σ_{j>i} mu_ji y_j)^2 <= bound``, one per ±pair.

    The representative has its highest-index nonzero coordinate positive.
    """
    n = len(b)
    out: list[Vector] = []
    y = [0] * n

    def rec(i: int, remaining: Fraction, leading_zero: bool) -> None:
        c = -sum((mu[j][i] * y[j] for j in range(i + 1, n) if y[j]), Fraction(0))
        r = remaining / b[i]
        s = isqrt(floor(r)) + 1
        lo = floor(c) - s
        hi = floor(c) + s + 1
        if leading_zero:
            lo = max(lo, 0)
        for t in range(lo, hi + 1):
            d = t - c
            d2 = d * d
            if d2 > r:
                continue
            if leading_zero and t == 0:
                if i > 0:
                    y[i] = 0
                    rec(i - 1, remaining, True)
                continue
            y[i] = t
            rest = remaining - b[i] * d2
            if i == 0:
                out.append(tuple(y))
            else:
                rec(i - 1, rest, False)
        y[i] = 0

    rec(n - 1, Fraction(bound), True)
    return out


def _canonical_sign(v: Vector) -> Vector:
    for x in v:
        if x:
            return v if x > 0 else tuple(-t for t in v)
    return v


def short_vectors(q: QForm, bound: int) -> list[tuple[Vector, int]]:
    """All nonzero ``v`` with ``v^t G v <= bound``, one per ±pair.

    Representatives have their first nonzero coordinate positive; the list
    is sorted by ``(norm, vector)``.
    """
    if not is_positive_definite(q):
        raise NotPositiveDefinite("short vectors need a positive definite form")
    if bound < 1 or q.rank == 0:
        return []
    u, red = lll(q)
    mu, b = gram_schmidt(red.gram.tolist())
    n = q.rank
    rows = u.rows()
    found = []
    for y in _enumerate_coordinates(mu, b, bound):
        v = tuple(sum(y[i] * rows[i][j] for i in range(n) if y[i]) for j in range(n))
        v = _canonical_sign(v)
        found.append((v, q.norm(v)))
    found.sort(key=lambda p: (p[1], p[0]))
    return found


def signed_vectors(q: QForm, bound: int) -> list[Vector]:
    """Both signs of every nonzero vector of norm at most ``bound``."""
    out = []
    for v, _ in short_vectors(q, bound):
        out.append(v)
        out.append(tuple(-x for x in v))
    return out


def minimum(q: QForm) -> int:
    """Smallest nonzero norm."""
    u, red = lll(q)
    bound = min(red.gram[i, i] for i in range(q.rank))
    vs = short_vectors(q, bound)
    return vs[0][1]


def gram_of(q: QForm, vectors) -> Matrix:
    b = Matrix([list(v) for v in vectors], ncols=q.rank)
    return b @ q.gram @ b.T
