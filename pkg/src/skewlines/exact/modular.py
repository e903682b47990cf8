"""Multimodular determinant and rank with Hadamard-bound certificates."""

from __future__ import annotations

import functools
import math

import numpy as np
import sympy

from ..gfp import _INT64_MAX, _float_ok, det_mod_prime, rank_mod_p, to_residues

# Moduli stay below 2**20 so blocked elimination can run its trailing updates
# as exact float64 products for matrices up to a few thousand rows.
_MODULUS_CEILING = 2**20


@functools.lru_cache(maxsize=None)
def _modulus(k: int) -> int:
    """The k-th prime below the ceiling, descending."""
    return sympy.prevprime(_MODULUS_CEILING if k == 0 else _modulus(k - 1))


def row_norms_squared(m) -> list[int]:
    arr = np.asarray(m, dtype=object)
    return [sum(int(x) * int(x) for x in row) for row in arr]


def det_mod(m, modulus: int) -> int:
    """Determinant modulo a prime."""
    a = np.array(to_residues(m, modulus), dtype=np.int64)
    n = a.shape[0]
    if _float_ok(modulus, n):
        return det_mod_prime(a, modulus)
    step = (modulus - 1) ** 2
    bound = modulus - 1
    det = 1
    for k in range(n):
        col = a[k:, k] % modulus
        nz = np.flatnonzero(col)
        if nz.size == 0:
            return 0
        i = int(nz[0])
        if i:
            a[[k, k + i], k:] = a[[k + i, k], k:]
            col[[0, i]] = col[[i, 0]]
            det = -det
        piv = int(col[0])
        det = det * piv % modulus
        below = col[1:]
        if below.any():
            prow = a[k, k + 1:] % modulus * pow(piv, -1, modulus) % modulus
            if bound + step > _INT64_MAX:
                a[k + 1:, k + 1:] %= modulus
                bound = modulus - 1
            a[k + 1:, k + 1:] -= np.outer(below, prow)
            bound += step
    return det % modulus


def multimodular_determinant(m) -> int:
    """Exact determinant via CRT over enough primes to exceed twice the Hadamard bound."""
    arr = np.asarray(m)
    n = arr.shape[0]
    if n == 0:
        return 1
    norms = row_norms_squared(arr)
    if 0 in norms:
        return 0
    target = 4 * math.prod(norms)  # (2 * Hadamard bound) ** 2
    value, modulus, k = 0, 1, 0
    while modulus * modulus <= target:
        q = _modulus(k)
        r = det_mod(arr, q)
        value += modulus * ((r - value) * pow(modulus, -1, q) % q)
        modulus *= q
        k += 1
    return value - modulus if value > modulus // 2 else value


def multimodular_rank(m) -> int:
    """Exact rank over Q.

    The largest rank seen mod any prime is a lower bound. Once the product of
    the primes used exceeds the Hadamard bound on every (r+1)-minor, all of
    those minors vanish over Z and the bound is tight.
    """
    arr = np.asarray(m)
    if arr.size == 0:
        return 0
    norms = sorted((x for x in row_norms_squared(arr) if x), reverse=True)
    limit = min(arr.shape)
    best, modulus, k = 0, 1, 0
    while True:
        if best >= min(limit, len(norms)):
            return best
        minor_bound_sq = math.prod(norms[: best + 1])
        if modulus * modulus > minor_bound_sq:
            return best
        q = _modulus(k)
        best = max(best, rank_mod_p(arr, q))
        modulus *= q
        k += 1
