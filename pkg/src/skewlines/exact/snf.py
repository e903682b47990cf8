"""Smith normal form over the integers with arbitrary-precision entries.

Classical elimination: bring the nonzero entry of least absolute value to
the corner, clear its row and column by division with remainder, and repeat
until the corner divides everything left in the submatrix.
"""

from __future__ import annotations

import numpy as np

from .profile import SnfResult

__all__ = ["smith_normal_form"]


def _as_rows(m) -> list[list[int]]:
    arr = np.asarray(m, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {arr.shape}")
    return [[int(x) for x in row] for row in arr]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _min_pivot(a: list[list[int]], t: int, rows: int, cols: int):
    best = None
    best_abs = 0
    for i in range(t, rows):
        row = a[i]
        for j in range(t, cols):
            x = row[j]
            if x and (best is None or abs(x) < best_abs):
                best, best_abs = (i, j), abs(x)
                if best_abs == 1:
                    return best
    return best


def _non_divisible(a: list[list[int]], t: int, rows: int, cols: int, d: int):
    for i in range(t + 1, rows):
        row = a[i]
        for j in range(t + 1, cols):
            if row[j] % d:
                return i
    return None


def smith_normal_form(m, want_witnesses: bool = False) -> SnfResult:
    """Invariant factors of an integer matrix.

    With ``want_witnesses`` the result also carries unimodular ``left`` and
    ``right`` (object arrays) such that ``left @ m @ right`` is the diagonal
    matrix of invariant factors.
    """
    a = _as_rows(m)
    rows = len(a)
    cols = np.asarray(m).shape[1]
    u = _identity(rows) if want_witnesses else None
    v = _identity(cols) if want_witnesses else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if u is not None:
            u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        if v is not None:
            for row in v:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row dst -= q * row src
        rd, rs = a[dst], a[src]
        for j in range(cols):
            if rs[j]:
                rd[j] -= q * rs[j]
        if u is not None:
            ud, us = u[dst], u[src]
            for j in range(rows):
                if us[j]:
                    ud[j] -= q * us[j]

    def add_col(dst, src, q):
        # col dst -= q * col src
        for row in a:
            if row[src]:
                row[dst] -= q * row[src]
        if v is not None:
            for row in v:
                if row[src]:
                    row[dst] -= q * row[src]

    diag_len = min(rows, cols)
    for t in range(diag_len):
        while True:
            piv = _min_pivot(a, t, rows, cols)
            if piv is None:
                break
            i, j = piv
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            d = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // d)
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // d)
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            k = _non_divisible(a, t, rows, cols, d)
            if k is None:
                break
            add_row(t, k, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]

    diagonal = [a[i][i] for i in range(diag_len)]
    left = right = None
    if want_witnesses:
        left = np.array(u, dtype=object).reshape(rows, rows)
        right = np.array(v, dtype=object).reshape(cols, cols)
    return SnfResult(diagonal, (rows, cols), left, right)
