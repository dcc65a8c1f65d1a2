"""Dense exact matrices over cyclotomic numbers, with kernel and order helpers."""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycNum, ONE, ZERO, _coerce

__all__ = ["Matrix", "kernel_basis", "rref", "element_order", "OrderBoundExceeded"]


class OrderBoundExceeded(RuntimeError):
    """Raised when repeated multiplication fails to reach the identity in time."""


def _entry(value) -> CycNum:
    out = _coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot use {value!r} as a matrix entry")
    return out


class Matrix:
    """Immutable rows x cols matrix with CycNum entries."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(_entry(v) for v in entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match the shape")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._hash = None

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("rows must be nonempty and of equal length")
        return cls(len(rows), len(rows[0]), [v for r in rows for v in r])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def column(cls, values) -> "Matrix":
        values = list(values)
        return cls(len(values), 1, values)

    @classmethod
    def diagonal(cls, values) -> "Matrix":
        values = list(values)
        n = len(values)
        return cls(n, n, [values[i] if i == j else ZERO for i in range(n) for j in range(n)])

    def __getitem__(self, key):
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_lists(self) -> list[list[CycNum]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            n, m, k = self.rows, other.cols, self.cols
            a, b = self.entries, other.entries
            out = []
            for i in range(n):
                arow = a[i * k : (i + 1) * k]
                for j in range(m):
                    acc = ZERO
                    for t in range(k):
                        v = arow[t]
                        if v:
                            w = b[t * m + j]
                            if w:
                                acc = acc + v * w
                    out.append(acc)
            return Matrix(n, m, out)
        scal = _coerce(other)
        if scal is NotImplemented:
            return NotImplemented
        return Matrix(self.rows, self.cols, [scal * v for v in self.entries])

    def __rmul__(self, other):
        scal = _coerce(other)
        if scal is NotImplemented:
            return NotImplemented
        return Matrix(self.rows, self.cols, [scal * v for v in self.entries])

    def __add__(self, other):
        if not isinstance(other, Matrix) or (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sum")
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, Matrix) or (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix difference")
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix(self.rows, self.cols, [-v for v in self.entries])

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def trace(self) -> CycNum:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        acc = ZERO
        for i in range(self.rows):
            acc = acc + self[i, i]
        return acc

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(self[i, j] == (ONE if i == j else ZERO)
                   for i in range(self.rows) for j in range(self.cols))

    def is_diagonal(self) -> bool:
        return all(not self[i, j] for i in range(self.rows) for j in range(self.cols) if i != j)

    def det(self) -> CycNum:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        a = self.row_lists()
        n = self.rows
        det = ONE
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                return ZERO
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det = det * a[col][col]
            inv = a[col][col].inverse()
            a[col] = [v * inv for v in a[col]]
            for r in range(col + 1, n):
                f = a[r][col]
                if f:
                    a[r] = [v - f * w for v, w in zip(a[r], a[col])]
        return det

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        a = [list(self.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            inv = a[col][col].inverse()
            a[col] = [v * inv for v in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [v - f * w for v, w in zip(a[r], a[col])]
        return Matrix(n, n, [a[i][n + j] for i in range(n) for j in range(n)])

    def rank(self) -> int:
        _, pivots = rref(self)
        return len(pivots)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __str__(self):
        rows = [[str(self[i, j]) for j in range(self.cols)] for i in range(self.rows)]
        width = max((len(s) for r in rows for s in r), default=1)
        return "\n".join("[" + "  ".join(s.rjust(width) for s in r) + "]" for r in rows)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


def rref(mat: Matrix) -> tuple[list[list[CycNum]], tuple[int, ...]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    a = mat.row_lists()
    nrows, ncols = mat.rows, mat.cols
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][col].inverse()
        a[r] = [v * inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return a, tuple(pivots)


def kernel_basis(mat: Matrix) -> list[Matrix]:
    """Exact basis of the right null space, echelon-normalized.

    Each basis vector is scaled so its first nonzero entry is 1; vectors are
    ordered by their free-column index, so the output is deterministic.
    """
    a, pivots = rref(mat)
    ncols = mat.cols
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ZERO] * ncols
        vec[fc] = ONE
        for r, pc in enumerate(pivots):
            v = a[r][fc]
            if v:
                vec[pc] = -v
        lead = next(v for v in vec if v)
        if lead != ONE:
            inv = lead.inverse()
            vec = [v * inv for v in vec]
        basis.append(Matrix.column(vec))
    return basis


def element_order(g: Matrix, bound: int = 10000) -> int:
    """Multiplicative order of a finite-order matrix, by repeated multiplication."""
    if g.rows != g.cols:
        raise ValueError("order of a non-square matrix")
    if g.is_identity():
        return 1
    h = g
    k = 1
    while not h.is_identity():
        h = h * g
        k += 1
        if k > bound:
            raise OrderBoundExceeded(f"no identity power within {bound} steps")
    return k
