"""Integral quadratic forms given by symmetric Gram matrices; exact LLL."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DimensionMismatch, NotPositiveDefinite, NotUnimodular
from ..linalg import Matrix


@dataclass(frozen=True)
class QForm:
    rank: int
    gram: Matrix

    def __post_init__(self):
        if self.gram.shape != (self.rank, self.rank):
            raise DimensionMismatch("gram must be rank × rank")
        if not self.gram.is_symmetric():
            raise ValueError("gram is not symmetric")

    @classmethod
    def of(cls, gram) -> "QForm":
        m = gram if isinstance(gram, Matrix) else Matrix(gram)
        return cls(m.nrows, m)

    def norm(self, v) -> int:
        return self.pair(v, v)

    def pair(self, x, y) -> int:
        g = self.gram
        n = self.rank
        return sum(x[i] * g[i, j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j])

    def det(self) -> int:
        return self.gram.det()

    def is_even(self) -> bool:
        return all(self.gram[i, i] % 2 == 0 for i in range(self.rank))

    def to_json(self) -> dict:
        return {"rank": str(self.rank), "gram": self.gram.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "QForm":
        m = Matrix.from_json(obj["gram"] if "gram" in obj else obj)
        return cls(m.nrows, m)


def leading_minors(q: QForm) -> list[int]:
    n = q.rank
    return [q.gram.submatrix(range(i), range(i)).det() for i in range(1, n + 1)]


def is_positive_definite(q: QForm) -> bool:
    """Sylvester's criterion with exact minors."""
    return all(m > 0 for m in leading_minors(q))


def is_unimodular(q: QForm) -> bool:
    return abs(q.det()) == 1


def require_positive_definite(q: QForm) -> None:
    if not is_positive_definite(q):
        raise NotPositiveDefinite("form is not positive definite")


def gl_action(gamma: Matrix, q: QForm) -> QForm:
    """``γ · q = γ gram γ^t``."""
    if gamma.shape != (q.rank, q.rank):
        raise DimensionMismatch("γ must match the rank of the form")
    if not gamma.is_unimodular():
        raise NotUnimodular("γ is not unimodular")
    return QForm(q.rank, gamma @ q.gram @ gamma.T)


def gram_schmidt(gram: list[list[int]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """``mu`` (strictly lower part) and squared lengths ``B`` of the GS basis."""
    n = len(gram)
    mu = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = Fraction(gram[i][j])
            for l in range(j):
                s -= mu[j][l] * mu[i][l] * b[l]
            mu[i][j] = s / b[j]
        s = Fraction(gram[i][i])
        for l in range(i):
            s -= mu[i][l] * mu[i][l] * b[l]
        b[i] = s
        if s <= 0:
            raise NotPositiveDefinite("non-positive Gram–Schmidt length")
    return mu, b


def _round(x: Fraction) -> int:
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def lll(q: QForm, delta: Fraction = Fraction(99, 100)) -> tuple[Matrix, QForm]:
    """LLL on the Gram matrix. Returns ``(u, u·q)`` with ``u`` unimodular.

    Rows of ``u`` are the reduced basis vectors in the original coordinates.
    """
    require_positive_definite(q)
    n = q.rank
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    g = q.gram.tolist()
    if n <= 1:
        return Matrix(u, ncols=n), q
    mu, b = gram_schmidt(g)

    def reduce(k: int, j: int) -> None:
        c = _round(mu[k][j])
        if not c:
            return
        u[k] = [x - c * y for x, y in zip(u[k], u[j])]
        # b_k <- b_k - c b_j on the Gram matrix
        gkj = g[k][j]
        gjj = g[j][j]
        for t in range(n):
            if t != k:
                g[k][t] -= c * g[j][t]
                g[t][k] = g[k][t]
        g[k][k] += -2 * c * gkj + c * c * gjj
        for t in range(j):
            mu[k][t] -= c * mu[j][t]
        mu[k][j] -= c

    k = 1
    while k < n:
        reduce(k, k - 1)
        if b[k] < (delta - mu[k][k - 1] ** 2) * b[k - 1]:
            u[k], u[k - 1] = u[k - 1], u[k]
            g[k], g[k - 1] = g[k - 1], g[k]
            for row in g:
                row[k], row[k - 1] = row[k - 1], row[k]
            mu, b = gram_schmidt(g)
            k = max(k - 1, 1)
        else:
            for j in range(k - 2, -1, -1):
                reduce(k, j)
            k += 1
    um = Matrix(u, ncols=n)
    return um, QForm(n, Matrix(g, ncols=n))
