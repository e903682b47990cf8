"""Dimensions of the mod-p images of M_i = {x : m x ≡ 0 mod p^i}.

Independent of both Smith normal form engines: M_i is tracked as the column
span of a generator matrix B_i (plus p^N Z^n, which every M_i with i <= N
contains). Given W_i = m B_i ≡ 0 mod p^i, the residuals R_i = W_i / p^i mod p
decide which combinations survive one more power of p:

    M_{i+1} = B_i · {c : R_i c ≡ 0 mod p}

and that kernel lattice has the explicit basis "null vectors of rref(R_i)"
together with p·e_j for each pivot column j. The dimension of M̄_i is the
rank of B_i mod p.
"""

from __future__ import annotations

import numpy as np

from ..gfp import FpMatrix, Prime, rank_mod_p, rref
from ..intmat import exact_matmul, max_abs

__all__ = ["filtration_dims", "filtration_bases"]

_INT64_LIMIT = 2**62


def _generators(m, p: int, i_max: int):
    """Yield (i, B_i mod p^N) for i = 0..i_max."""
    arr = np.asarray(m)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {arr.shape}")
    rows, cols = arr.shape
    modulus = p ** (i_max + 1)
    # W update multiplies residues mod p^N by entries < p and sums over cols.
    wide = modulus * p * max(1, cols) + modulus >= _INT64_LIMIT or max_abs(arr) * modulus >= _INT64_LIMIT
    dtype = object if wide else np.int64
    if wide or arr.dtype == object:
        w = np.array([[int(x) % modulus for x in row] for row in arr.astype(object)], dtype=dtype).reshape(rows, cols)
    else:
        w = np.mod(arr.astype(np.int64), modulus)
    b = np.eye(cols, dtype=np.int64).astype(dtype)
    yield 0, b
    for i in range(i_max):
        residual = (w // p**i) % p
        red, rank, pivots = rref(FpMatrix(p, residual.astype(np.int64)))
        if rank:
            pivot_set = set(pivots)
            free = np.array([j for j in range(cols) if j not in pivot_set], dtype=np.int64)
            piv = np.array(pivots, dtype=np.int64)
            coeff = red.data[:rank][:, free].astype(dtype)
            for g in (b, w):
                if free.size:
                    g[:, free] = (g[:, free] - exact_matmul(g[:, piv], coeff)) % modulus
                g[:, piv] = g[:, piv] * p % modulus
        yield i + 1, b


def filtration_bases(m, p: int, i_max: int) -> list[np.ndarray]:
    """Row bases over F_p of M̄_0, ..., M̄_{i_max} (each row is a vector of the domain)."""
    p = int(Prime(p))
    out = []
    for _, b in _generators(m, p, i_max):
        red, rank, _ = rref(FpMatrix(p, (b % p).astype(np.int64).T))
        out.append(red.data[:rank].copy())
    return out


def filtration_dims(m, p: int, i_max: int) -> list[int]:
    """``dim M̄_i`` for i = 0..i_max, non-increasing in i.

    For the skew matrix this is the tail count sum_{j>=i} f_j of
    elementary divisors divisible by p^i.
    """
    p = int(Prime(p))
    if i_max < 0:
        raise ValueError("i_max must be non-negative")
    return [rank_mod_p((b % p).astype(np.int64), p) for _, b in _generators(m, p, i_max)]
