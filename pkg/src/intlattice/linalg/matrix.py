"""Immutable exact matrices over Z and Q.

Entries are Python ints (``Matrix``) or ``fractions.Fraction`` in lowest
terms (``RationalMatrix``). Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Sequence

from ..errors import DimensionMismatch, SingularMatrix


class _Base:
    __slots__ = ("_rows", "nrows", "ncols")

    @staticmethod
    def _coerce(x: Any) -> Any:  # pragma: no cover - overridden
        raise NotImplementedError

    _exact: type = object

    def __init__(self, rows: Iterable[Iterable[Any]], ncols: int | None = None):
        data = tuple(tuple(row) for row in rows)
        exact = self._exact
        if not all(type(x) is exact for row in data for x in row):
            data = tuple(tuple(self._coerce(x) for x in row) for row in data)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionMismatch("ragged rows")
            if ncols is not None and ncols != width:
                raise DimensionMismatch("ncols does not match rows")
        else:
            width = ncols or 0
        object.__setattr__(self, "_rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", width)

    @classmethod
    def _trusted(cls, rows: list[list[Any]], ncols: int):
        """Skip coercion and shape checks for rows built internally."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "_rows", tuple(tuple(r) for r in rows))
        object.__setattr__(obj, "nrows", len(rows))
        object.__setattr__(obj, "ncols", ncols)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int):
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n: int):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def diag(cls, values: Sequence[Any]):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Any]], nrows: int | None = None):
        columns = [tuple(c) for c in columns]
        if nrows is None:
            if not columns:
                raise DimensionMismatch("nrows required for an empty column list")
            nrows = len(columns[0])
        if any(len(c) != nrows for c in columns):
            raise DimensionMismatch("columns of unequal length")
        return cls([[c[i] for c in columns] for i in range(nrows)], ncols=len(columns))

    @classmethod
    def column_vector(cls, v: Sequence[Any]):
        return cls([[x] for x in v], ncols=1)

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, key):
        i, j = key
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    def columns(self) -> tuple[tuple, ...]:
        return tuple(self.column(j) for j in range(self.ncols))

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def is_symmetric(self) -> bool:
        n = self.nrows
        return self.is_square() and all(
            self._rows[i][j] == self._rows[j][i] for i in range(n) for j in range(i)
        )

    def is_alternating(self) -> bool:
        n = self.nrows
        return self.is_square() and all(
            self._rows[i][j] == -self._rows[j][i] for i in range(n) for j in range(i + 1)
        )

    # -- arithmetic -----------------------------------------------------------

    @property
    def T(self):
        return type(self)._trusted(list(zip(*self._rows)), self.nrows) if self.nrows else type(self).zeros(self.ncols, 0)

    def _result_type(self, other):
        if isinstance(self, RationalMatrix) or isinstance(other, RationalMatrix):
            return RationalMatrix
        return Matrix

    def __matmul__(self, other):
        if not isinstance(other, _Base):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        n = other.ncols
        orows = other._rows
        rows = []
        for r in self._rows:
            acc = [0] * n
            for a, orow in zip(r, orows):
                if a:
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
            rows.append(acc)
        cls = self._result_type(other)
        if cls is Matrix:
            return Matrix._trusted(rows, n)
        return cls(rows, ncols=n)

    def __add__(self, other):
        if not isinstance(other, _Base):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        rows = [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)]
        return self._result_type(other)(rows, ncols=self.ncols)

    def __neg__(self):
        return type(self)([[-a for a in r] for r in self._rows], ncols=self.ncols)

    def __sub__(self, other):
        if not isinstance(other, _Base):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, _Base):
            return NotImplemented
        cls = type(self)
        if isinstance(scalar, Fraction) and scalar.denominator != 1:
            cls = RationalMatrix
        return cls([[a * scalar for a in r] for r in self._rows], ncols=self.ncols)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not self.is_square() or n < 0:
            raise DimensionMismatch("power needs a square matrix and n >= 0")
        result, base = type(self).identity(self.nrows), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise DimensionMismatch("hstack needs equal row counts")
        return self._result_type(other)(
            [r + s for r, s in zip(self._rows, other._rows)], ncols=self.ncols + other.ncols
        )

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack needs equal column counts")
        return self._result_type(other)(self._rows + other._rows, ncols=self.ncols)

    def kron(self, other):
        rows = []
        for r in self._rows:
            for s in other._rows:
                rows.append([a * b for a in r for b in s])
        return self._result_type(other)(rows, ncols=self.ncols * other.ncols)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]):
        return type(self)._trusted([[self._rows[i][j] for j in col_idx] for i in row_idx], len(col_idx))

    def det(self):
        if not self.is_square():
            raise DimensionMismatch("det of a non-square matrix")
        return _bareiss_det([list(r) for r in self._rows]) if isinstance(self, Matrix) else _fraction_det(
            [list(r) for r in self._rows]
        )

    # -- equality -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, _Base):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"{type(self).__name__}({self.tolist()})"


class Matrix(_Base):
    """Integer matrix."""

    __slots__ = ()
    _exact = int

    @staticmethod
    def _coerce(x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        if hasattr(x, "__index__"):
            return x.__index__()
        raise TypeError(f"non-integer entry {x!r}")

    def is_unimodular(self) -> bool:
        return self.is_square() and abs(self.det()) == 1

    def to_rational(self) -> "RationalMatrix":
        return RationalMatrix(self._rows, ncols=self.ncols)

    def inverse(self) -> "RationalMatrix":
        return self.to_rational().inverse()

    def content(self) -> int:
        """gcd of all entries (0 for the zero matrix)."""
        from math import gcd

        g = 0
        for r in self._rows:
            for x in r:
                g = gcd(g, x)
        return g

    def to_json(self) -> dict:
        return {
            "rows": str(self.nrows),
            "cols": str(self.ncols),
            "entries": [[str(x) for x in r] for r in self._rows],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Matrix":
        m = cls([[int(x) for x in r] for r in obj["entries"]], ncols=int(obj["cols"]))
        if m.nrows != int(obj["rows"]):
            raise DimensionMismatch("row count does not match entries")
        return m


class RationalMatrix(_Base):
    """Rational matrix with entries in lowest terms."""

    __slots__ = ()
    _exact = Fraction

    @staticmethod
    def _coerce(x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, str)):
            return Fraction(x)
        raise TypeError(f"non-rational entry {x!r}")

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._rows for x in r)

    def to_integer(self) -> Matrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return Matrix([[x.numerator for x in r] for r in self._rows], ncols=self.ncols)

    def max_denominator(self) -> int:
        return max((x.denominator for r in self._rows for x in r), default=1)

    def inverse(self) -> "RationalMatrix":
        if not self.is_square():
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.nrows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._rows)]
        for c in range(n):
            piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
            if piv is None:
                raise SingularMatrix("matrix is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            p = aug[c][c]
            aug[c] = [x / p for x in aug[c]]
            for i in range(n):
                if i != c and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        return RationalMatrix([r[n:] for r in aug], ncols=n)

    def to_json(self) -> dict:
        return {
            "rows": str(self.nrows),
            "cols": str(self.ncols),
            "entries": [[str(x) for x in r] for r in self._rows],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RationalMatrix":
        return cls([[Fraction(x) for x in r] for r in obj["entries"]], ncols=int(obj["cols"]))


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _fraction_det(a: list[list[Fraction]]) -> Fraction:
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        p = a[c][c]
        det *= p
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det
