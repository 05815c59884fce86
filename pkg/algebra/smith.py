"""
Smith normal form over the integers with unimodular transforms, and an
exact solver for integer row systems y·A = t built on it.
"""

from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def row_times_matrix(row: Sequence[int], mat: Matrix) -> List[int]:
    if not mat:
        return []
    cols = len(mat[0])
    out = [0] * cols
    for k, coeff in enumerate(row):
        if coeff:
            mrow = mat[k]
            for j in range(cols):
                out[j] += coeff * mrow[j]
    return out


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return [row_times_matrix(row, b) for row in a]


def _swap_rows(mats, i, j):
    for mat in mats:
        mat[i], mat[j] = mat[j], mat[i]


def _add_row(mats, target, source, factor):
    for mat in mats:
        src = mat[source]
        tgt = mat[target]
        for k in range(len(tgt)):
            tgt[k] += factor * src[k]


def smith_normal_form(a: Matrix, ncols: Optional[int] = None) -> Tuple[Matrix, Matrix, Matrix, Matrix]:
    """
    Compute U, D, V, V^-1 with U·A·V = D diagonal and d_1 | d_2 | ...

    Args:
        a: Integer matrix (list of rows)
        ncols: Column count, needed when ``a`` has no rows

    Returns:
        (U, D, V, Vinv) with U and V unimodular
    """
    rows = len(a)
    cols = len(a[0]) if rows else (ncols or 0)
    d = [list(r) for r in a]
    u = identity(rows)
    # columns of V are tracked as rows of Vt so that column ops become row ops
    vt = identity(cols)
    vinv = identity(cols)

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        vt[i], vt[j] = vt[j], vt[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_col(target, source, factor):
        for r in d:
            r[target] += factor * r[source]
        src = vt[source]
        tgt = vt[target]
        for k in range(cols):
            tgt[k] += factor * src[k]
        # inverse transform: row source of Vinv loses factor * row target
        s = vinv[source]
        t = vinv[target]
        for k in range(cols):
            s[k] -= factor * t[k]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    val = abs(d[i][j])
                    if val and (best is None or val < best):
                        best = val
                        pivot = (i, j)
            if pivot is None:
                v = [list(col) for col in zip(*vt)] if cols else []
                return u, d, v, vinv
            pi, pj = pivot
            if pi != t:
                _swap_rows((d, u), t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = d[t][t]
            changed = False
            for i in range(t + 1, rows):
                q = d[i][t] // p
                if q:
                    _add_row((d, u), i, t, -q)
                if d[i][t]:
                    changed = True
            for j in range(t + 1, cols):
                q = d[t][j] // p
                if q:
                    add_col(j, t, -q)
                if d[t][j]:
                    changed = True
            if changed:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % p),
                None,
            )
            if bad is not None:
                _add_row((d, u), t, bad, 1)
                continue
            if p < 0:
                d[t] = [-x for x in d[t]]
                u[t] = [-x for x in u[t]]
            break

    v = [list(col) for col in zip(*vt)] if cols else []
    return u, d, v, vinv


class IntegerSolver:
    """Solves y·A = t over Z for a fixed integer matrix A, caching its SNF."""

    def __init__(self, a: Matrix, ncols: Optional[int] = None):
        self.rows = len(a)
        self.cols = len(a[0]) if self.rows else (ncols or 0)
        self.u, self.d, self.v, self.vinv = smith_normal_form(a, self.cols)
        self.diagonal = [self.d[i][i] for i in range(min(self.rows, self.cols))]
        self.rank = sum(1 for x in self.diagonal if x != 0)

    def solve(self, target: Sequence[int]) -> Optional[List[int]]:
        """Return one integer y with y·A = target, or None when no solution exists."""
        if len(target) != self.cols:
            raise ValueError(f"Target has length {len(target)}, expected {self.cols}")
        tv = row_times_matrix(target, self.v) if self.cols else []
        w = [0] * self.rows
        for i in range(self.rank):
            if tv[i] % self.diagonal[i]:
                return None
            w[i] = tv[i] // self.diagonal[i]
        if any(tv[j] for j in range(self.rank, self.cols)):
            return None
        return row_times_matrix(w, self.u)

    def left_kernel(self) -> Matrix:
        """A Z-basis of {y : y·A = 0}."""
        return [list(self.u[i]) for i in range(self.rank, self.rows)]


def invariant_factors(a: Matrix, ncols: Optional[int] = None) -> List[int]:
    _, d, _, _ = smith_normal_form(a, ncols)
    rows = len(d)
    cols = len(d[0]) if rows else 0
    return [abs(d[i][i]) for i in range(min(rows, cols))]
