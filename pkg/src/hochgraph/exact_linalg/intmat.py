"""Sparse exact integer matrices.

IntegerMatrix stores only nonzero entries in a dict keyed by (row, col).
Entries are Python ints, so there is no precision limit; dense int64 /
object ndarrays are produced on demand for the reduction kernels.
"""

import numpy as np

from .kernels import ENTRY_LIMIT


class IntegerMatrix:
    """Immutable-by-convention sparse matrix over the integers."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), val in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ValueError(f"entry ({i},{j}) out of range")
                if val != 0:
                    self.entries[(i, j)] = int(val)

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def diagonal(cls, rows, cols, diag):
        return cls(rows, cols, {(i, i): d for i, d in enumerate(diag) if d})

    @classmethod
    def from_rows(cls, rows_of_ints):
        data = [list(r) for r in rows_of_ints]
        m = len(data)
        n = len(data[0]) if m else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != n:
                raise ValueError("ragged rows")
            for j, val in enumerate(row):
                if val:
                    entries[(i, j)] = int(val)
        return cls(m, n, entries)

    @classmethod
    def from_numpy(cls, arr):
        arr = np.asarray(arr)
        m, n = arr.shape
        entries = {}
        for i, j in zip(*np.nonzero(arr)):
            entries[(int(i), int(j))] = int(arr[i, j])
        return cls(m, n, entries)

    # -- queries ----------------------------------------------------------

    def entry(self, i, j):
        return self.entries.get((i, j), 0)

    @property
    def nnz(self):
        return len(self.entries)

    def is_zero(self):
        return not self.entries

    def max_abs(self):
        if not self.entries:
            return 0
        return max(abs(v) for v in self.entries.values())

    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"IntegerMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # -- arithmetic (exact, Python ints) ----------------------------------

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape()} @ {other.shape()}")
        by_row = {}
        for (i, k), v in other.entries.items():
            by_row.setdefault(i, []).append((k, v))
        acc = {}
        for (i, j), a in self.entries.items():
            for k, b in by_row.get(j, ()):
                key = (i, k)
                acc[key] = acc.get(key, 0) + a * b
        return IntegerMatrix(self.rows, other.cols, acc)

    def __add__(self, other):
        if self.shape() != other.shape():
            raise ValueError("shape mismatch")
        acc = dict(self.entries)
        for key, v in other.entries.items():
            acc[key] = acc.get(key, 0) + v
        return IntegerMatrix(self.rows, self.cols, acc)

    def __neg__(self):
        return IntegerMatrix(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def transpose(self):
        return IntegerMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def submatrix(self, row_idx, col_idx):
        """Restriction to the given row/column index lists (in that order)."""
        rmap = {r: i for i, r in enumerate(row_idx)}
        cmap = {c: j for j, c in enumerate(col_idx)}
        entries = {}
        for (i, j), v in self.entries.items():
            ri = rmap.get(i)
            cj = cmap.get(j)
            if ri is not None and cj is not None:
                entries[(ri, cj)] = v
        return IntegerMatrix(len(row_idx), len(col_idx), entries)

    # -- dense views -------------------------------------------------------

    def fits_int64(self):
        return self.max_abs() <= ENTRY_LIMIT

    def to_int64(self):
        arr = np.zeros((self.rows, self.cols), dtype=np.int64)
        for (i, j), v in self.entries.items():
            arr[i, j] = v
        return arr

    def to_object(self):
        arr = np.empty((self.rows, self.cols), dtype=object)
        arr[:] = 0
        for (i, j), v in self.entries.items():
            arr[i, j] = v
        return arr

    def to_lists(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def diagonal_values(self):
        return [self.entry(i, i) for i in range(min(self.rows, self.cols))]
