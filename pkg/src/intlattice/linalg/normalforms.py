"""Hermite and Smith normal forms, integer kernels and integer solving.

Convention (used everywhere in the package): the *column* Hermite normal
form ``h = m @ u`` with ``u`` unimodular is lower triangular in echelon
sense. Each nonzero column ``j`` has a pivot row ``p_j`` with
``p_0 < p_1 < ...``; entries above the pivot are zero, the pivot is
positive, and the entries to its left in the pivot row lie in
``[0, pivot)``. Zero columns come last.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .matrix import Matrix, RationalMatrix


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _naive_hnf_columns(cols: list[list[int]], nrows: int, track: list[list[int]] | None):
    """In-place column HNF on a list of columns; returns pivot rows."""
    n = len(cols)
    pivots: list[int] = []
    c = 0
    for i in range(nrows):
        if c == n:
            break
        for j in range(c + 1, n):
            b = cols[j][i]
            if b == 0:
                continue
            a = cols[c][i]
            if a != 0 and b % a == 0:
                q = b // a
                cj, cc = cols[j], cols[c]
                cols[j] = [y - q * x for x, y in zip(cc, cj)]
                if track is not None:
                    tj, tc = track[j], track[c]
                    track[j] = [y - q * x for x, y in zip(tc, tj)]
                continue
            g, x, y = xgcd(a, b)
            p, q = -b // g, a // g
            cc, cj = cols[c], cols[j]
            cols[c] = [x * s + y * t for s, t in zip(cc, cj)]
            cols[j] = [p * s + q * t for s, t in zip(cc, cj)]
            if track is not None:
                tc, tj = track[c], track[j]
                track[c] = [x * s + y * t for s, t in zip(tc, tj)]
                track[j] = [p * s + q * t for s, t in zip(tc, tj)]
        piv = cols[c][i]
        if piv == 0:
            continue
        if piv < 0:
            cols[c] = [-s for s in cols[c]]
            if track is not None:
                track[c] = [-s for s in track[c]]
            piv = -piv
        for l in range(c):
            q = cols[l][i] // piv
            if q:
                cl, cc = cols[l], cols[c]
                cols[l] = [s - q * t for s, t in zip(cl, cc)]
                if track is not None:
                    tl, tc = track[l], track[c]
                    track[l] = [s - q * t for s, t in zip(tl, tc)]
        pivots.append(i)
        c += 1
    return pivots


def naive_hnf(m: Matrix) -> Matrix:
    """Plain extended-gcd column reduction; reference implementation for tests."""
    cols = [list(c) for c in m.columns()]
    _naive_hnf_columns(cols, m.nrows, None)
    cols = [c for c in cols if any(c)]
    return Matrix.from_columns(cols, nrows=m.nrows) if cols else Matrix.zeros(m.nrows, 0)


def _column_profile(rows: list[list[int]], ncols: int) -> list[int]:
    """Greedy left-to-right independent columns (fraction-free elimination)."""
    a = [list(r) for r in rows]
    nr = len(a)
    pivots: list[int] = []
    r, prev = 0, 1
    for c in range(ncols):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        arc = a[r][c]
        for i in range(r + 1, nr):
            aic = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                row_i[j] = (row_i[j] * arc - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = arc
        pivots.append(c)
        r += 1
    return pivots


def _modular_hnf(cols: list[list[int]], s: int, det_multiple: int) -> list[list[int]]:
    """Column HNF of a full-rank lattice in Z^s, given a multiple of its determinant.

    All intermediate entries stay below ``det_multiple`` in absolute value.
    """
    R = abs(det_multiple)
    work = [[x % R for x in c] for c in cols]
    basis: list[list[int]] = []
    for i in range(s):
        w = [0] * s
        w[i] = R
        nxt = []
        for col in work:
            b = col[i]
            if b == 0:
                nxt.append(col)
                continue
            a = w[i]
            g, x, y = xgcd(a, b)
            p, q = -b // g, a // g
            w_new = [(x * u + y * v) for u, v in zip(w, col)]
            col = [(p * u + q * v) % R for u, v in zip(w, col)]
            w = [u % R if k > i else u for k, u in enumerate(w_new)]
            nxt.append(col)
        d = w[i]
        R //= d
        basis.append(w)
        if R == 1:
            for k in range(i + 1, s):
                e = [0] * s
                e[k] = 1
                basis.append(e)
            break
        work = [[u % R if k > i else 0 for k, u in enumerate(c)] for c in nxt]
        work = [c for c in work if any(c)]
    for i in range(s):
        piv = basis[i][i]
        for l in range(i):
            q = basis[l][i] // piv
            if q:
                basis[l] = [u - q * v for u, v in zip(basis[l], basis[i])]
    return basis


def hnf_basis(m: Matrix) -> Matrix:
    """Nonzero columns of the HNF of ``m``: the canonical basis of its column span."""
    rows = [list(r) for r in m.rows()]
    col_idx = _column_profile(rows, m.ncols)
    s = len(col_idx)
    if s == 0:
        return Matrix.zeros(m.nrows, 0)
    row_idx = _column_profile([list(c) for c in m.columns()], m.nrows)
    square = [[rows[i][j] for j in col_idx] for i in row_idx]
    d = _bareiss_det_int(square)
    proj_cols = [[m[i, j] for i in row_idx] for j in range(m.ncols)]
    h_p = _modular_hnf(proj_cols, s, d)
    if s == m.nrows:
        return Matrix.from_columns(h_p, nrows=m.nrows)
    # lift the projected basis back to Z^nrows: h = m[:, C] @ m[P, C]^-1 @ h_p
    hp_rows = [[h_p[j][i] for j in range(s)] for i in range(s)]
    y, den = _fraction_free_solve([r + hr for r, hr in zip(square, hp_rows)], s)
    h = m.submatrix(range(m.nrows), col_idx) @ Matrix(y, ncols=s)
    return Matrix([[v // den for v in r] for r in h.rows()], ncols=s)


def hnf(m: Matrix) -> tuple[Matrix, Matrix]:
    """Column Hermite normal form: returns ``(h, u)`` with ``m @ u == h``."""
    r, n = m.shape
    if n == 0:
        return Matrix.zeros(r, 0), Matrix.zeros(0, 0)
    stacked = hnf_basis(m.vstack(Matrix.identity(n)))
    h_cols, u_cols = [], []
    for c in stacked.columns():
        h_cols.append(c[:r])
        u_cols.append(c[r:])
    return Matrix.from_columns(h_cols, nrows=r), Matrix.from_columns(u_cols, nrows=n)


def kernel(m: Matrix) -> Matrix:
    """Basis (as columns, in HNF) of the integer kernel ``{x : m @ x == 0}``.

    The kernel lattice is automatically saturated in ``Z^ncols``.
    """
    r, n = m.shape
    if n == 0:
        return Matrix.zeros(0, 0)
    stacked = hnf_basis(m.vstack(Matrix.identity(n)))
    ker = [c[r:] for c in stacked.columns() if not any(c[:r])]
    return Matrix.from_columns(ker, nrows=n) if ker else Matrix.zeros(n, 0)


def _bareiss_det_int(a: list[list[int]]) -> int:
    return Matrix(a, ncols=len(a)).det()


def rank(m: Matrix) -> int:
    return len(_column_profile([list(r) for r in m.rows()], m.ncols))


def _integer_rows(a, b) -> list[list[int]]:
    """Rows of ``[a | b]`` scaled to integers; row scaling keeps the solution set."""
    out = []
    for ra, rb in zip(a.rows(), b.rows()):
        row = list(ra) + list(rb)
        den = 1
        for x in row:
            q = getattr(x, "denominator", 1)
            den = den * q // gcd(den, q)
        out.append([int(x * den) for x in row])
    return out


def _fraction_free_solve(rows: list[list[int]], s: int) -> tuple[list[list[int]], int] | None:
    """Solve ``a x = b`` from integer rows of ``[a | b]`` with ``a`` of column rank ``s``.

    Bareiss elimination; returns ``(y, d)`` with ``x = y / d`` (rows of ``y``
    index unknowns), or None when the system is inconsistent.
    """
    a = [list(r) for r in rows]
    n = len(a)
    width = len(a[0]) if a else s
    prev = 1
    for c in range(s):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix does not have full column rank")
        a[c], a[piv] = a[piv], a[c]
        p, row_c = a[c][c], a[c]
        for i in range(c + 1, n):
            row_i = a[i]
            f = row_i[c]
            if f == 0 and p == prev:
                continue
            for j in range(c + 1, width):
                row_i[j] = (row_i[j] * p - f * row_c[j]) // prev
            row_i[c] = 0
        prev = p
    for i in range(s, n):
        if any(a[i][s:]):
            return None
    d = prev
    t = width - s
    y = [[0] * t for _ in range(s)]
    for col in range(t):
        for i in range(s - 1, -1, -1):
            acc = d * a[i][s + col] - sum(a[i][j] * y[j][col] for j in range(i + 1, s) if a[i][j])
            q, r = divmod(acc, a[i][i])
            if r:
                raise AssertionError("inexact back substitution")
            y[i][col] = q
    return y, d


def _as_rational(y, d, t) -> RationalMatrix:
    return RationalMatrix([[Fraction(v, d) for v in r] for r in y], ncols=t)


def rational_solve(a: Matrix | RationalMatrix, b: Matrix | RationalMatrix) -> RationalMatrix | None:
    """Rational ``x`` with ``a @ x == b``, or None when the system is inconsistent.

    The solution is unique when ``a`` has full column rank; otherwise the
    free unknowns are set to zero.
    """
    s, t = a.ncols, b.ncols
    if a.nrows != b.nrows:
        raise ValueError("row counts differ")
    if s == 0:
        return RationalMatrix.zeros(0, t) if b.is_zero() else None
    rows = _integer_rows(a, b)
    try:
        sol = _fraction_free_solve(rows, s)
    except ValueError:
        cols = _column_profile([r[:s] for r in rows], s)
        sub = _fraction_free_solve([[r[j] for j in cols] + r[s:] for r in rows], len(cols))
        if sub is None:
            return None
        y0, d = sub
        y = [[0] * t for _ in range(s)]
        for i, j in enumerate(cols):
            y[j] = y0[i]
        return _as_rational(y, d, t)
    return None if sol is None else _as_rational(*sol, t)


def integer_solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Integer ``x`` with ``a @ x == b``, or None when no integral solution exists."""
    s, t = a.ncols, b.ncols
    if a.nrows != b.nrows:
        raise ValueError("row counts differ")
    if s == 0:
        return Matrix.zeros(0, t) if b.is_zero() else None
    try:
        sol = _fraction_free_solve(_integer_rows(a, b), s)
    except ValueError:
        # a @ u = [h | 0] with h of full column rank; solve h y = b over Z
        h, u = hnf(a)
        r = next((j for j in range(h.ncols) if not any(h.column(j))), h.ncols)
        if r == 0:
            return Matrix.zeros(s, t) if b.is_zero() else None
        y = integer_solve(h.submatrix(range(h.nrows), range(r)), b)
        return None if y is None else u.submatrix(range(u.nrows), range(r)) @ y
    if sol is None:
        return None
    y, d = sol
    if any(v % d for r in y for v in r):
        return None
    return Matrix([[v // d for v in r] for r in y], ncols=t)


def snf(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``(d, u, v)`` with ``u @ m @ v == d``.

    ``d`` is diagonal with ``d_1 | d_2 | ...`` and nonnegative entries.
    """
    r, c = m.shape
    if r == 0 or c == 0:
        return m, Matrix.identity(r), Matrix.identity(c)
    # reduce to the HNF first so the elimination starts from small entries
    h, u1 = hnf(m)
    s = next((j for j in range(c) if not any(h.column(j))), c)
    d_s, u2, v2 = _snf_dense(h.submatrix(range(r), range(s)))
    v = u1 @ _block_diag(v2, Matrix.identity(c - s))
    d = d_s.hstack(Matrix.zeros(r, c - s)) if s < c else d_s
    return d, u2, v


def _elimination(a: int, b: int) -> tuple[int, int, int, int]:
    """Unimodular 2x2 ``(x, y, p, q)`` sending ``(a, b)`` to ``(gcd, 0)``."""
    if b % a == 0:
        return 1, 0, -(b // a), 1
    g, x, y = xgcd(a, b)
    return x, y, -b // g, a // g


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    rows = [list(r) + [0] * b.ncols for r in a.rows()]
    rows += [[0] * a.ncols + list(r) for r in b.rows()]
    return Matrix(rows, ncols=a.ncols + b.ncols)


def _snf_dense(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    r, c = m.nrows, m.ncols
    a = [list(row) for row in m.rows()]
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    # v is kept as a list of columns
    v = [[int(i == j) for i in range(c)] for j in range(c)]

    def row_combine(i, j, x, y, p, q):
        # rows (i, j) <- (x*Ri + y*Rj, p*Ri + q*Rj)
        ai, aj = a[i], a[j]
        a[i] = [x * s + y * t for s, t in zip(ai, aj)]
        a[j] = [p * s + q * t for s, t in zip(ai, aj)]
        ui, uj = u[i], u[j]
        u[i] = [x * s + y * t for s, t in zip(ui, uj)]
        u[j] = [p * s + q * t for s, t in zip(ui, uj)]

    def col_combine(i, j, x, y, p, q):
        for row in a:
            s, t = row[i], row[j]
            row[i], row[j] = x * s + y * t, p * s + q * t
        vi, vj = v[i], v[j]
        v[i] = [x * s + y * t for s, t in zip(vi, vj)]
        v[j] = [p * s + q * t for s, t in zip(vi, vj)]

    for t in range(min(r, c)):
        # bring a nonzero entry of smallest absolute value to (t, t)
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        if i0 != t:
            a[t], a[i0] = a[i0], a[t]
            u[t], u[i0] = u[i0], u[t]
        if j0 != t:
            for row in a:
                row[t], row[j0] = row[j0], row[t]
            v[t], v[j0] = v[j0], v[t]
        while True:
            for i in range(t + 1, r):
                b = a[i][t]
                if b == 0:
                    continue
                row_combine(t, i, *_elimination(a[t][t], b))
            for j in range(t + 1, c):
                b = a[t][j]
                if b == 0:
                    continue
                col_combine(t, j, *_elimination(a[t][t], b))
            if any(a[i][t] for i in range(t + 1, r)):
                continue
            piv = a[t][t]
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            # fold the offending row into row t and redo the elimination
            a[t] = [s + w for s, w in zip(a[t], a[bad])]
            u[t] = [s + w for s, w in zip(u[t], u[bad])]
        if a[t][t] < 0:
            a[t] = [-s for s in a[t]]
            u[t] = [-s for s in u[t]]
    d = Matrix(a, ncols=c)
    um = Matrix(u, ncols=r) if r else Matrix.zeros(0, 0)
    vm = Matrix.from_columns(v, nrows=c) if c else Matrix.zeros(0, 0)
    return d, um, vm


def elementary_divisors(m: Matrix) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    d, _, _ = snf(m)
    return [d[i, i] for i in range(min(d.shape)) if d[i, i] != 0]
