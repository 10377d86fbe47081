"""Dense complex determinants.

``det_complex`` works on any square array-like whose entries support the
field operations and ``abs`` (``complex``, ``numpy.complex128`` or
``mpmath.mpc``), so the extended precision paths share it.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeError


def _rows(m) -> list[list]:
    if isinstance(m, np.ndarray):
        if m.ndim != 2:
            raise ShapeError(f"expected a matrix, got shape {m.shape}")
        rows = [list(row) for row in m]
    else:
        rows = [list(row) for row in m]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ShapeError("determinant of a non-square matrix")
    return rows


def det_complex(m):
    """Determinant by Gaussian elimination with partial pivoting.

    The pivot is the entry of largest modulus in the current column; ties
    go to the smallest row index.  A zero column gives ``0``.  The empty
    matrix has determinant ``1``.
    """
    a = _rows(m)
    n = len(a)
    if n == 0:
        return 1
    det = 1
    for col in range(n):
        piv = max(range(col, n), key=lambda i: (abs(a[i][col]), -i))
        if abs(a[piv][col]) == 0:
            return 0 * a[0][0]
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        prow = a[col]
        for i in range(col + 1, n):
            f = a[i][col] / p
            if f == 0:
                continue
            row = a[i]
            for j in range(col + 1, n):
                row[j] = row[j] - f * prow[j]
    return det


def minor(m, rows_removed, cols_removed) -> list[list]:
    """Submatrix with the given (0-based) rows and columns deleted."""
    rr = set(rows_removed)
    cc = set(cols_removed)
    return [[x for j, x in enumerate(row) if j not in cc] for i, row in enumerate(m) if i not in rr]


def permutation_sign(seq) -> int:
    """Sign of the permutation that sorts ``seq`` (distinct entries)."""
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def condition_estimate(m) -> float:
    """2-norm condition number of ``m`` in double precision."""
    a = np.array([[complex(x) for x in row] for row in m], dtype=complex)
    if a.size == 0:
        return 1.0
    return float(np.linalg.cond(a))
