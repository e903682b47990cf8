"""Linear algebra over the prime field F_p.

Matrices are dense numpy ``int64`` arrays holding least non-negative residues.
A bit-packed elimination path is used for ``p = 2``; it is interchangeable
with the generic path and exists only for throughput.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

__all__ = [
    "Prime",
    "is_prime",
    "FpMatrix",
    "rref",
    "rank_mod_p",
    "mat_mul_mod_p",
    "kernel_basis_mod_p",
    "to_residues",
    "det_mod_prime",
]

# Largest modulus for which a product of two residues fits in int64.
_INT64_SAFE_MODULUS = 3_037_000_499
_INT64_MAX = 2**63 - 1


def is_prime(n: int) -> bool:
    """Trial division; fine for the desk-scale primes this package handles."""
    n = int(n)
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Prime(int):
    """An ``int`` that is guaranteed to be prime."""

    def __new__(cls, value: int) -> "Prime":
        if isinstance(value, Prime):
            return value
        if isinstance(value, bool) or int(value) != value:
            raise ValueError(f"p must be prime, got {value!r}")
        if not is_prime(int(value)):
            raise ValueError(f"p must be prime, got {value}")
        return super().__new__(cls, int(value))

    def __repr__(self) -> str:
        return f"Prime({int(self)})"


def to_residues(m, p: int) -> np.ndarray:
    """Reduce an integer array (int64 or object) entrywise to [0, p)."""
    p = int(p)
    if p > _INT64_SAFE_MODULUS:
        raise ValueError(f"modulus {p} too large for int64 residues")
    arr = np.asarray(m)
    if arr.dtype == object:
        return np.vectorize(lambda x: int(x) % p, otypes=[np.int64])(arr) if arr.size else arr.astype(np.int64)
    if not np.issubdtype(arr.dtype, np.integer):
        raise TypeError(f"expected an integer matrix, got dtype {arr.dtype}")
    return np.mod(arr.astype(np.int64, copy=False), p)


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """Dense matrix over F_p. Entries are normalized to [0, p) on construction."""

    p: Prime
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = Prime(self.p)
        arr = np.array(to_residues(self.data, p), dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"FpMatrix needs a 2-d array, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "data", arr)

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((int(self.p), self.shape, self.data.tobytes()))

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        return mat_mul_mod_p(self, other)

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.p, self.data.T)

    T = property(transpose)


# -- p = 2 bit-packed rows -------------------------------------------------
#
# Row i is an int whose bit (cols - 1 - j) holds entry (i, j), so the leading
# column of a row is its highest set bit.


def _pack_rows(a: np.ndarray) -> list[int]:
    rows, cols = a.shape
    if cols == 0:
        return [0] * rows
    packed = np.packbits(a.astype(np.uint8), axis=1)
    pad = packed.shape[1] * 8 - cols
    return [int.from_bytes(r.tobytes(), "big") >> pad for r in packed]


def _unpack_rows(rows: Iterable[int], cols: int) -> np.ndarray:
    rows = list(rows)
    out = np.zeros((len(rows), cols), dtype=np.int64)
    for i, v in enumerate(rows):
        j = cols - 1
        while v:
            if v & 1:
                out[i, j] = 1
            v >>= 1
            j -= 1
    return out


def _rref_gf2(a: np.ndarray) -> tuple[np.ndarray, int, list[int]]:
    rows, cols = a.shape
    work = _pack_rows(a)
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        bit = 1 << (cols - 1 - c)
        for i in range(r, rows):
            if work[i] & bit:
                break
        else:
            continue
        work[r], work[i] = work[i], work[r]
        pr = work[r]
        for i in range(rows):
            if i != r and work[i] & bit:
                work[i] ^= pr
        pivots.append(c)
        r += 1
    return _unpack_rows(work, cols), r, pivots


def _rank_gf2(a: np.ndarray) -> int:
    work = [v for v in _pack_rows(a) if v]
    rank = 0
    while work:
        work.sort()
        pivot = work.pop()
        top = 1 << (pivot.bit_length() - 1)
        work = [w for w in (v ^ pivot if v & top else v for v in work) if w]
        rank += 1
    return rank


# -- generic prime ---------------------------------------------------------


def _rref_generic(a: np.ndarray, p: int) -> tuple[np.ndarray, int, list[int]]:
    a = np.array(a, dtype=np.int64)
    rows, cols = a.shape
    step = (p - 1) ** 2
    bound = p - 1
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        col = a[r:, c] % p
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        i = int(nz[0])
        if i:
            a[[r, r + i], c:] = a[[r + i, r], c:]
        a[r, c:] = a[r, c:] % p * pow(int(col[i]), -1, p) % p
        factors = a[:, c] % p
        factors[r] = 0
        if factors.any():
            if bound + step > _INT64_MAX:
                a[:, c:] %= p
                bound = p - 1
            a[:, c:] -= np.outer(factors, a[r, c:])
            bound += step
        pivots.append(c)
        r += 1
    a %= p
    return a, r, pivots


def _rank_generic(a: np.ndarray, p: int) -> int:
    """Row-echelon rank with lazy reduction.

    The trailing block is only reduced mod p when the running bound on its
    entries could overflow int64; pivot columns and rows are reduced on read.
    """
    a = np.array(a, dtype=np.int64)
    rows, cols = a.shape
    if rows > cols:
        a = np.ascontiguousarray(a.T)
        rows, cols = cols, rows
    step = (p - 1) ** 2
    bound = p - 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = a[r:, c] % p
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        i = int(nz[0])
        if i:
            a[[r, r + i], c:] = a[[r + i, r], c:]
            col[[0, i]] = col[[i, 0]]
        below = col[1:]
        if below.any():
            prow = a[r, c + 1:] % p * pow(int(col[0]), -1, p) % p
            if bound + step > _INT64_MAX:
                a[r + 1:, c + 1:] %= p
                bound = p - 1
            a[r + 1:, c + 1:] -= np.outer(below, prow)
            bound += step
        r += 1
    return r



# -- blocked elimination -----------------------------------------------------
#
# Right-looking LU on panels of _PANEL columns. The panel is eliminated with
# rank-one updates; the rows to its right are then brought up to date with
# two matrix products done in float64, which is exact while every partial
# sum stays below 2**53.

_PANEL = 128
_FLOAT_EXACT = 2**53


def _float_ok(p: int, inner: int) -> bool:
    return (p - 1) ** 2 * max(1, inner) < _FLOAT_EXACT


def _matmul_mod(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    out = x.astype(np.float64) @ y.astype(np.float64)
    return np.fmod(out, p).astype(np.int64)


def _inv_unit_lower(l: np.ndarray, p: int) -> np.ndarray:
    k = l.shape[0]
    inv = np.eye(k, dtype=np.int64)
    for i in range(1, k):
        inv[i, :i] = -(l[i, :i] @ inv[:i, :i]) % p
    return inv


def _inv_unit_upper(u: np.ndarray, p: int) -> np.ndarray:
    n = u.shape[0]
    if n <= _PANEL:
        return _inv_unit_lower(u.T.copy(), p).T.copy()
    h = n // 2
    a_inv = _inv_unit_upper(u[:h, :h], p)
    c_inv = _inv_unit_upper(u[h:, h:], p)
    out = np.zeros_like(u)
    out[:h, :h] = a_inv
    out[h:, h:] = c_inv
    out[:h, h:] = -_matmul_mod(_matmul_mod(a_inv, u[:h, h:], p), c_inv, p) % p
    return out


def _echelon_blocked(a: np.ndarray, p: int, stop_at_zero_pivot: bool = False):
    """Row echelon form in place.

    Returns ``(rank, pivot_cols, pivot_values, sign)`` where ``sign`` is the
    parity of the row swaps. With ``stop_at_zero_pivot`` (determinants) the
    elimination gives up at the first column without a pivot.
    """
    rows, cols = a.shape
    lm = np.zeros((rows, _PANEL), dtype=np.int64)
    r = 0
    pivots: list[int] = []
    values: list[int] = []
    sign = 1
    c = 0
    while c < cols and r < rows:
        end = min(c + _PANEL, cols)
        lm[r:] = 0
        k = 0
        for j in range(c, end):
            top = r + k
            if top == rows:
                break
            col = a[top:, j] % p
            nz = np.flatnonzero(col)
            if nz.size == 0:
                if stop_at_zero_pivot:
                    return r + k, pivots, values, 0
                continue
            i = int(nz[0])
            if i:
                a[[top, top + i]] = a[[top + i, top]]
                lm[[top, top + i]] = lm[[top + i, top]]
                col[[0, i]] = col[[i, 0]]
                sign = -sign
            piv = int(col[0])
            mult = col[1:] * pow(piv, -1, p) % p
            a[top, j:end] %= p
            if mult.any():
                a[top + 1:, j:end] = (a[top + 1:, j:end] - np.outer(mult, a[top, j:end])) % p
            lm[top + 1:, k] = mult
            pivots.append(j)
            values.append(piv)
            k += 1
        if k and end < cols:
            l11 = lm[r:r + k, :k].copy()
            u12 = _matmul_mod(_inv_unit_lower(l11, p), a[r:r + k, end:] % p, p)
            a[r:r + k, end:] = u12
            if r + k < rows:
                a[r + k:, end:] = (a[r + k:, end:] - _matmul_mod(lm[r + k:, :k], u12, p)) % p
        r += k
        c = end
        if r < rows and c < cols and not a[r:, c:].any():
            break
    a %= p
    return r, pivots, values, sign


def _rref_blocked(a: np.ndarray, p: int) -> tuple[np.ndarray, int, list[int]]:
    a = np.array(a, dtype=np.int64)
    rank, pivots, values, _ = _echelon_blocked(a, p)
    if rank:
        u = a[:rank]
        inv = np.array([pow(v, -1, p) for v in values], dtype=np.int64)
        u[:] = u * inv[:, None] % p
        t_inv = _inv_unit_upper(u[:, pivots].copy(), p)
        u[:] = _matmul_mod(t_inv, u, p)
    a[rank:] = 0
    return a, rank, pivots


def det_mod_prime(m: np.ndarray, p: int) -> int:
    """Determinant of a square residue matrix over F_p."""
    a = np.array(m, dtype=np.int64)
    n = a.shape[0]
    if not _float_ok(p, n):
        raise ValueError(f"p={p} is too large for float64 elimination at n={n}")
    rank, _, values, sign = _echelon_blocked(a, p, stop_at_zero_pivot=True)
    if rank < n:
        return 0
    det = sign % p
    for v in values:
        det = det * v % p
    return det


def rref(m: FpMatrix, method: str = "auto") -> tuple[FpMatrix, int, list[int]]:
    """Reduced row echelon form of ``m`` over F_p.

    Returns ``(R, rank, pivot_cols)``. ``method`` is ``"auto"``, ``"generic"``,
    ``"blocked"`` or ``"bitpacked"`` (the last only for p = 2).
    """
    if not isinstance(m, FpMatrix):
        raise TypeError("rref expects an FpMatrix")
    p = int(m.p)
    if method == "bitpacked" or (method == "auto" and p == 2):
        if p != 2:
            raise ValueError("bit-packed elimination is only available for p = 2")
        out, rank, pivots = _rref_gf2(m.data)
    elif method == "auto" and _float_ok(p, max(m.shape)):
        out, rank, pivots = _rref_blocked(m.data, p)
    elif method in ("auto", "generic"):
        out, rank, pivots = _rref_generic(m.data, p)
    elif method == "blocked":
        if not _float_ok(p, max(m.shape)):
            raise ValueError(f"p={p} is too large for blocked elimination at this size")
        out, rank, pivots = _rref_blocked(m.data, p)
    else:
        raise ValueError(f"unknown rref method {method!r}")
    return FpMatrix(m.p, out), rank, pivots


def rank_mod_p(m, p: int) -> int:
    """Rank over F_p of an integer matrix reduced entrywise mod p."""
    p = Prime(p)
    a = m.data if isinstance(m, FpMatrix) else to_residues(m, p)
    if a.ndim != 2 or 0 in a.shape:
        return 0
    if p == 2:
        return _rank_gf2(a)
    if _float_ok(int(p), max(a.shape)):
        work = np.array(a if a.shape[0] <= a.shape[1] else a.T, dtype=np.int64)
        return _echelon_blocked(work, int(p))[0]
    return _rank_generic(a, int(p))


def mat_mul_mod_p(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    if a.p != b.p:
        raise ValueError(f"field mismatch: p={a.p} and p={b.p}")
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    p = int(a.p)
    # Chunk the inner dimension so partial sums stay inside int64.
    step = max(1, (2**62) // max(1, (p - 1) ** 2))
    out = np.zeros((a.rows, b.cols), dtype=np.int64)
    for k in range(0, a.cols, step):
        out = (out + a.data[:, k:k + step] @ b.data[k:k + step]) % p
    return FpMatrix(a.p, out)


def kernel_basis_mod_p(m, p: int) -> np.ndarray:
    """Basis of the right null space ``{x : m x = 0}`` over F_p, one vector per row."""
    fm = m if isinstance(m, FpMatrix) else FpMatrix(p, m)
    r, rank, pivots = rref(fm)
    cols = fm.cols
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    p = int(fm.p)
    basis[np.arange(len(free)), free] = 1
    if rank and free:
        basis[:, pivots] = (-r.data[:rank][:, free].T) % p
    return basis
