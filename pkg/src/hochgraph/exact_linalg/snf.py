"""Smith normal form over the integers, with unimodular transforms."""

import numpy as np

from .intmat import IntegerMatrix
from .kernels import STATUS_OK, smith_reduce_exact, smith_reduce_i64


class SmithDecomposition:
    """U @ A @ V = D with U, V unimodular and D a diagonal divisibility chain.

    ``v_inv`` (the inverse of V) is carried along because homology extraction
    needs coordinates with respect to the column basis V.
    """

    __slots__ = ("U", "D", "V", "v_inv")

    def __init__(self, U, D, V, v_inv):
        self.U = U
        self.D = D
        self.V = V
        self.v_inv = v_inv

    @property
    def rank(self):
        return sum(1 for d in self.D.diagonal_values() if d != 0)

    def diagonal(self):
        return self.D.diagonal_values()

    def invariant_factors(self):
        """Diagonal entries exceeding 1, in divisibility order."""
        return [d for d in self.D.diagonal_values() if d > 1]


def _reduce_arrays(a, track_u, track_v, track_w, exact):
    m, n = a.shape
    if exact:
        u = np.empty((m, m), dtype=object) if track_u else np.zeros((1, 1), dtype=object)
        v = np.empty((n, n), dtype=object) if track_v else np.zeros((1, 1), dtype=object)
        w = np.empty((n, n), dtype=object) if track_w else np.zeros((1, 1), dtype=object)
        for arr, k, tracked in ((u, m, track_u), (v, n, track_v), (w, n, track_w)):
            if tracked:
                arr[:] = 0
                for i in range(k):
                    arr[i, i] = 1
        status = smith_reduce_exact(a, u, v, w, track_u, track_v, track_w)
    else:
        u = np.eye(m, dtype=np.int64) if track_u else np.zeros((1, 1), dtype=np.int64)
        v = np.eye(n, dtype=np.int64) if track_v else np.zeros((1, 1), dtype=np.int64)
        w = np.eye(n, dtype=np.int64) if track_w else np.zeros((1, 1), dtype=np.int64)
        status = smith_reduce_i64(a, u, v, w, track_u, track_v, track_w)
    return status, a, u, v, w


def _smith_raw(mat, track_u=True, track_v=True, track_w=True):
    """Run the best available lane; fall back to the exact lane on overflow.

    Returns (diag, U, V, W) where diag is a list of Python ints and the
    transforms are returned as IntegerMatrix (or None when untracked).
    """
    if mat.fits_int64():
        a = mat.to_int64()
        status, a, u, v, w = _reduce_arrays(a, track_u, track_v, track_w, exact=False)
        if status == STATUS_OK:
            diag = [int(a[i, i]) for i in range(min(mat.rows, mat.cols))]
            return (
                diag,
                IntegerMatrix.from_numpy(u) if track_u else None,
                IntegerMatrix.from_numpy(v) if track_v else None,
                IntegerMatrix.from_numpy(w) if track_w else None,
            )
    a = mat.to_object()
    _, a, u, v, w = _reduce_arrays(a, track_u, track_v, track_w, exact=True)
    diag = [int(a[i, i]) for i in range(min(mat.rows, mat.cols))]
    return (
        diag,
        IntegerMatrix.from_numpy(u) if track_u else None,
        IntegerMatrix.from_numpy(v) if track_v else None,
        IntegerMatrix.from_numpy(w) if track_w else None,
    )


def smith_normal_form(mat: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form with both transforms.

    >>> snf = smith_normal_form(IntegerMatrix.from_rows([[2, 4], [6, 8]]))
    >>> snf.diagonal()
    [2, 4]
    """
    diag, u, v, w = _smith_raw(mat, True, True, True)
    d = IntegerMatrix.diagonal(mat.rows, mat.cols, diag)
    return SmithDecomposition(u, d, v, w)


def rank(mat: IntegerMatrix) -> int:
    diag, _, _, _ = _smith_raw(mat, False, False, False)
    return sum(1 for d in diag if d != 0)


def invariant_factors(mat: IntegerMatrix):
    """Nontrivial invariant factors (> 1) of coker(mat), divisibility-ordered."""
    diag, _, _, _ = _smith_raw(mat, False, False, False)
    return [d for d in diag if d > 1]


def kernel_basis(mat: IntegerMatrix) -> IntegerMatrix:
    """Columns form a basis of the integer kernel (a pure sublattice)."""
    diag, _, v, _ = _smith_raw(mat, False, True, False)
    r = sum(1 for d in diag if d != 0)
    cols = list(range(r, mat.cols))
    return v.submatrix(list(range(mat.cols)), cols)
