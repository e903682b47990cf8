"""Eigenvalue bookkeeping for the skew matrix without a characteristic polynomial.

A symmetric matrix annihilated by (x - p^4)(x - p)(x + p^2) has exactly those
eigenvalues; their multiplicities are read off as nullities of A - pI and
A + p^2 I, computed as exact ranks.

The two ranks are certified together. When (A - pI)(A + p^2 I) = cJ with
c != 0, Sylvester's inequality gives rank(A - pI) + rank(A + p^2 I) <= n + 1,
while ranks modulo any prime are lower bounds; if the lower bounds already
add up to n + 1 both ranks are exact. Otherwise the multimodular rank is used.
"""

from __future__ import annotations

import numpy as np

from ..geometry import gaussian_binomial
from ..gfp import Prime, rank_mod_p
from ..intmat import exact_matmul
from ..report import CheckList
from .fraction_free import rank_over_rationals
from .modular import _modulus

__all__ = ["char_poly_free_spectrum_check", "certified_rank_pair", "determinant_from_identity"]


def _trace(m: np.ndarray) -> int:
    return sum(int(x) for x in np.diagonal(m))


def _multiple_of_ones(m: np.ndarray) -> int | None:
    """c if ``m`` equals c times the all-ones matrix, else None."""
    if m.size == 0:
        return None
    c = m.flat[0]
    return int(c) if (m == c).all() else None


def certified_rank_pair(x: np.ndarray, y: np.ndarray, product: np.ndarray) -> tuple[int, int, str]:
    """Exact ranks over Q of square ``x`` and ``y`` given ``product = x @ y``.

    Returns ``(rank_x, rank_y, method)``.
    """
    n = x.shape[0]
    c = _multiple_of_ones(product)
    if c:
        q = _modulus(0)
        lx, ly = rank_mod_p(x, q), rank_mod_p(y, q)
        if lx + ly == n + 1:
            return lx, ly, f"Sylvester bound with ranks mod {q}"
    return rank_over_rationals(x), rank_over_rationals(y), "multimodular"


def _identity_residual(a: np.ndarray, a2: np.ndarray, p: int) -> np.ndarray:
    """A^2 + (p^2 - p) A - p^3 I, which should be (p^4 - p^3) J."""
    n = a.shape[0]
    return a2 + (p * p - p) * a - p**3 * np.eye(n, dtype=np.int64)


def determinant_from_identity(a, p: int, a2: np.ndarray | None = None) -> int | None:
    """Exact det(A) derived from facts that are checked here.

    If A is symmetric with constant row sum k and
    A^2 + (p^2 - p) A - p^3 I = (p^4 - p^3) J, then A is diagonalizable, k is
    the eigenvalue on the ones vector, and on its orthogonal complement A
    satisfies (x - p)(x + p^2) = 0. The trace fixes how often each root
    occurs. Returns None when any premise fails.
    """
    p = int(Prime(p))
    a = np.asarray(a)
    n = a.shape[0]
    if a.shape != (n, n) or n == 0 or not (a == a.T).all():
        return None
    sums = a.sum(axis=1)
    if not (sums == sums[0]).all():
        return None
    k = int(sums[0])
    if a2 is None:
        a2 = exact_matmul(a, a)
    if _multiple_of_ones(_identity_residual(a, a2, p)) != p**4 - p**3:
        return None
    # k + p m1 - p^2 m2 = trace, m1 + m2 = n - 1
    num = k + p * (n - 1) - _trace(a)
    if num % (p + p * p):
        return None
    m2 = num // (p + p * p)
    m1 = n - 1 - m2
    if m1 < 0 or m2 < 0:
        return None
    return k * p**m1 * (-(p * p)) ** m2


def char_poly_free_spectrum_check(a, p: int) -> CheckList:
    p = int(Prime(p))
    a = np.asarray(a)
    n = a.shape[0]
    lines = gaussian_binomial(4, 2, p)
    eye = np.eye(n, dtype=np.int64)
    out = CheckList()

    out.add("trace(A)", 0, _trace(a))
    a2 = exact_matmul(a, a)
    out.add("trace(A^2)", p**4 * lines, _trace(a2))

    x = a - p * eye
    y = a + p * p * eye
    # (A - pI)(A + p^2 I) expands to the identity residual
    rank_x, rank_y, method = certified_rank_pair(x, y, _identity_residual(a, a2, p))
    out.add("rank(A - pI)", lines - (p**4 + p**2), rank_x, detail=method)
    out.add("rank(A + p^2 I)", lines - (p**3 + p**2 + p), rank_y, detail=method)

    # (A - p^4 I)(A - p I)(A + p^2 I), expanded around the already computed A^2.
    left = a2 - (p**4 + p) * a + p**5 * eye
    product = exact_matmul(left, y)
    out.add("(A - p^4 I)(A - pI)(A + p^2 I) = 0", 0, int(np.count_nonzero(product)))
    return out
