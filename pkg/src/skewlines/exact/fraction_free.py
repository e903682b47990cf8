"""Fraction-free (Bareiss) elimination over the integers.

Every division in the elimination is exact, so entries stay integral and no
rational arithmetic is needed. Above ``BAREISS_LIMIT`` rows the ``auto``
method switches to the multimodular routines, which are exact as well.
"""

from __future__ import annotations

import numpy as np

from .modular import multimodular_determinant, multimodular_rank

__all__ = ["determinant", "rank_over_rationals", "BAREISS_LIMIT"]

BAREISS_LIMIT = 200


def _bareiss(m) -> tuple[int, int, int]:
    """Returns (rank, sign of the row permutation, last pivot)."""
    arr = np.asarray(m, dtype=object)
    rows, cols = arr.shape
    a = [[int(x) for x in row] for row in arr]
    r = 0
    sign = 1
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        for i in range(r, rows):
            if a[i][c]:
                break
        else:
            continue
        if i != r:
            a[i], a[r] = a[r], a[i]
            sign = -sign
        prow = a[r]
        piv = prow[c]
        for i in range(r + 1, rows):
            row = a[i]
            f = row[c]
            if f:
                a[i] = row[:c + 1] + [(piv * x - f * y) // prev for x, y in zip(row[c + 1:], prow[c + 1:])]
                a[i][c] = 0
            elif piv != prev:
                a[i] = row[:c + 1] + [piv * x // prev for x in row[c + 1:]]
        prev = piv
        r += 1
    return r, sign, prev


def determinant(m, method: str = "auto") -> int:
    """Exact integer determinant.

    ``method`` is ``"bareiss"``, ``"multimodular"`` or ``"auto"``.
    """
    arr = np.asarray(m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"determinant needs a square matrix, got shape {arr.shape}")
    n = arr.shape[0]
    if n == 0:
        return 1
    if method == "auto":
        method = "bareiss" if n <= BAREISS_LIMIT else "multimodular"
    if method == "multimodular":
        return multimodular_determinant(arr)
    if method != "bareiss":
        raise ValueError(f"unknown determinant method {method!r}")
    rank, sign, last = _bareiss(arr)
    return sign * last if rank == n else 0


def rank_over_rationals(m, method: str = "auto") -> int:
    arr = np.asarray(m)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {arr.shape}")
    if arr.size == 0:
        return 0
    if method == "auto":
        method = "bareiss" if min(arr.shape) <= BAREISS_LIMIT else "multimodular"
    if method == "multimodular":
        return multimodular_rank(arr)
    if method != "bareiss":
        raise ValueError(f"unknown rank method {method!r}")
    return _bareiss(arr)[0]
