"""Seeded random matrices and lattices used by generators and tests."""

from __future__ import annotations

import random

from .linalg import Matrix

ENTRY_RANGE = (-3, 3)


def rng_for(seed: int, *salt) -> random.Random:
    """Independent stream per (seed, salt); stable across Python versions."""
    key = ":".join(str(s) for s in (seed, *salt))
    return random.Random(key)


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = ENTRY_RANGE[0], hi: int = ENTRY_RANGE[1]) -> Matrix:
    return Matrix([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], ncols=cols)


def random_nonsingular(rng: random.Random, n: int, lo: int = ENTRY_RANGE[0], hi: int = ENTRY_RANGE[1]) -> Matrix:
    """Entries uniform in ``[lo, hi]``, resampled until the determinant is nonzero."""
    while True:
        m = random_matrix(rng, n, n, lo, hi)
        if m.det() != 0:
            return m


def random_unimodular(rng: random.Random, n: int, steps: int | None = None) -> Matrix:
    """Product of elementary matrices (row additions and sign changes)."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return Matrix(rows, ncols=0)
    if steps is None:
        steps = 2 * n
    for _ in range(steps):
        if n == 1 or rng.random() < 0.1:
            i = rng.randrange(n)
            rows[i] = [-x for x in rows[i]]
            continue
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
    perm = list(range(n))
    rng.shuffle(perm)
    return Matrix([rows[p] for p in perm], ncols=n)


def random_symplectic(rng: random.Random, g: int, steps: int | None = None) -> Matrix:
    """Product of random transvections ``x ↦ x ± E(x, v) v`` for the standard form."""
    from .symplectic import standard_space, transvection

    space, _ = standard_space(g)
    n = 2 * g
    m = Matrix.identity(n)
    if steps is None:
        steps = 2 * n
    for _ in range(steps):
        v = [0] * n
        for i in rng.sample(range(n), rng.randint(1, 2)):
            v[i] = rng.choice((-1, 1))
        t = transvection(space, v).matrix
        if rng.random() < 0.5:
            t = t.inverse().to_integer()
        m = t @ m
    return m
