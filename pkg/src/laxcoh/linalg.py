"""Dense exact linear algebra over Q(i).

Everything here is deterministic: row reduction always picks as pivot the
first nonzero entry scanning columns left-to-right and rows top-to-bottom,
so repeated runs produce bit-identical results.  Matrices are immutable
after construction; all operations return fresh objects.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, Scalar

__all__ = [
    "ExactMatrix",
    "SizeMismatchError",
    "InfeasibleError",
    "commutator",
    "rref",
    "nullspace",
    "solve_affine",
]


class SizeMismatchError(ValueError):
    pass


class InfeasibleError(ValueError):
    """Raised when an affine system A x = b has no solution."""


def _as_scalar(x) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar(x)


class ExactMatrix:
    """Immutable dense matrix with Scalar entries."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Sequence[Sequence]):
        e = tuple(tuple(_as_scalar(x) for x in row) for row in entries)
        if e and any(len(row) != len(e[0]) for row in e):
            raise SizeMismatchError("ragged rows")
        object.__setattr__(self, "_e", e)
        object.__setattr__(self, "rows", len(e))
        object.__setattr__(self, "cols", len(e[0]) if e else 0)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @staticmethod
    def zero(rows: int, cols: Optional[int] = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return ExactMatrix([[ZERO] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def unit(n: int, i: int, j: int, value: Scalar = ONE) -> "ExactMatrix":
        """n x n matrix with a single entry at (i, j)."""
        rows = [[ZERO] * n for _ in range(n)]
        rows[i][j] = _as_scalar(value)
        return ExactMatrix(rows)

    @staticmethod
    def column(values: Iterable) -> "ExactMatrix":
        return ExactMatrix([[v] for v in values])

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij: Tuple[int, int]) -> Scalar:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return self._e[i]

    def entries(self):
        return self._e

    def column_vector(self, j: int) -> "ExactMatrix":
        return ExactMatrix([[self._e[i][j]] for i in range(self.rows)])

    def flat(self) -> List[Scalar]:
        return [x for row in self._e for x in row]

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self._e, other._e)
            ]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self._e, other._e)
            ]
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-a for a in row] for row in self._e])

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise SizeMismatchError(
                    f"cannot multiply {self.rows}x{self.cols} by "
                    f"{other.rows}x{other.cols}"
                )
            ot = list(zip(*other._e))
            out = []
            for r in self._e:
                out.append(
                    [
                        sum((a * b for a, b in zip(r, c)), ZERO)
                        for c in ot
                    ]
                )
            return ExactMatrix(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "ExactMatrix":
        c = _as_scalar(c)
        return ExactMatrix([[c * a for a in row] for row in self._e])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self._e))) if self._e else self

    def conj(self) -> "ExactMatrix":
        return ExactMatrix([[a.conj() for a in row] for row in self._e])

    def trace(self) -> Scalar:
        if self.rows != self.cols:
            raise SizeMismatchError("trace of non-square matrix")
        return sum((self._e[i][i] for i in range(self.rows)), ZERO)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self._e for x in row)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def __repr__(self):
        body = "; ".join(
            " ".join(str(x) for x in row) for row in self._e
        )
        return f"ExactMatrix[{body}]"

    def _same_shape(self, other: "ExactMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise SizeMismatchError(
                f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )


def commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """AB - BA for square matrices of equal size."""
    if a.rows != a.cols or b.rows != b.cols or a.rows != b.rows:
        raise SizeMismatchError("commutator needs equal square matrices")
    return a * b - b * a


# -- row reduction ----------------------------------------------------------


def _rref_rows(rows: List[List[Scalar]]) -> Tuple[List[List[Scalar]], List[int]]:
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(a: ExactMatrix) -> Tuple[ExactMatrix, List[int]]:
    """Reduced row-echelon form and its pivot columns."""
    rows = [list(r) for r in a.entries()]
    rows, pivots = _rref_rows(rows)
    return ExactMatrix(rows), pivots


def nullspace(a: ExactMatrix) -> List[ExactMatrix]:
    """Canonical kernel basis: free variables set to 1 in column order."""
    red, pivots = rref(a)
    pivot_set = set(pivots)
    free = [c for c in range(a.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * a.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r, f]
        basis.append(ExactMatrix.column(v))
    return basis


def solve_affine(
    a: ExactMatrix, b: ExactMatrix
) -> Tuple[ExactMatrix, List[ExactMatrix]]:
    """Solve A x = b exactly.

    Returns the canonical particular solution (free variables zero) and the
    canonical kernel basis; raises InfeasibleError when rank(A) < rank(A|b).
    """
    if b.rows != a.rows or b.cols != 1:
        raise SizeMismatchError("rhs must be a column of matching height")
    rows = [list(r) + [b[i, 0]] for i, r in enumerate(a.entries())]
    rows, pivots = _rref_rows(rows)
    if pivots and pivots[-1] == a.cols:
        raise InfeasibleError("inconsistent affine system")
    x = [ZERO] * a.cols
    for r, p in enumerate(pivots):
        x[p] = rows[r][a.cols]
    red = ExactMatrix([row[: a.cols] for row in rows])
    pivot_set = set(pivots)
    free = [c for c in range(a.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * a.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r, f]
        basis.append(ExactMatrix.column(v))
    return ExactMatrix.column(x), basis
