"""Exact integer matrix products.

numpy's integer matmul does not use BLAS. When every partial sum is provably
below 2**53 the product is done in float64 instead, which is exact there and
much faster; past that the int64 path is used while it cannot overflow, and
Python integers after that.
"""

from __future__ import annotations

import numpy as np

__all__ = ["max_abs", "exact_matmul"]

_FLOAT_EXACT = 2**53
_INT64_LIMIT = 2**62


def max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Integer matrix product ``a @ b`` without overflow."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[-1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    bound = max_abs(a) * max_abs(b) * max(1, a.shape[-1])
    if a.dtype != object and b.dtype != object:
        if bound < _FLOAT_EXACT:
            out = a.astype(np.float64) @ b.astype(np.float64)
            return out.astype(np.int64)
        if bound < _INT64_LIMIT:
            return a.astype(np.int64, copy=False) @ b.astype(np.int64, copy=False)
    return a.astype(object) @ b.astype(object)
