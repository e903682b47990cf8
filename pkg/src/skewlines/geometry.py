"""Subspaces of F_p^n in canonical reduced row echelon form.

Every r-subspace is stored by its unique RREF basis. Families of r-subspaces
are generated directly from (pivot columns, free entries) choices and sorted
lexicographically on the flattened basis, which fixes the row/column order of
every incidence matrix built from them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import config
from .gfp import FpMatrix, Prime, rank_mod_p, rref

__all__ = [
    "ResourceGuardError",
    "Subspace",
    "SubspaceFamily",
    "gaussian_binomial",
    "enumerate_subspaces",
    "intersection_dim",
    "is_incident",
    "intersection_dims",
]


class ResourceGuardError(RuntimeError):
    """Raised when a requested family exceeds the configured size cap."""


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of an n-dimensional space over F_q.

    Returns 0 when ``r < 0`` or ``r > n``.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    if r < 0 or r > n:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _is_rref(rows, p: int) -> bool:
    last = -1
    for i, row in enumerate(rows):
        if any(not 0 <= x < p for x in row):
            return False
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None or lead <= last or row[lead] != 1:
            return False
        if any(other[lead] for k, other in enumerate(rows) if k != i):
            return False
        last = lead
    return True


@dataclass(frozen=True, order=True)
class Subspace:
    """An r-subspace of F_p^n, identified by its RREF basis.

    Ordering and equality compare ``(p, n, basis)``; within one family that is
    the canonical lexicographic order on the flattened basis.
    """

    p: Prime
    n: int
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "p", Prime(self.p))
        if any(len(row) != self.n for row in self.basis):
            raise ValueError("basis rows must have length n")
        if not _is_rref(self.basis, self.p):
            raise ValueError("basis must be in reduced row echelon form with no zero rows")

    @classmethod
    def span(cls, p: int, vectors: Sequence[Sequence[int]], n: int | None = None) -> "Subspace":
        """Subspace spanned by ``vectors`` (any spanning set, zero rows allowed)."""
        arr = np.asarray(vectors, dtype=object)
        if n is None:
            n = arr.shape[1]
        arr = arr.reshape(-1, n)
        red, rank, _ = rref(FpMatrix(p, arr))
        return cls(p, n, tuple(tuple(int(x) for x in row) for row in red.data[:rank]))

    @property
    def dim(self) -> int:
        return len(self.basis)

    r = dim

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(self.dim, self.n)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    def key(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.basis))

    def vectors(self) -> Iterator[tuple[int, ...]]:
        """All p**dim vectors of the subspace."""
        m = self.matrix
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            yield tuple(int(x) for x in np.asarray(coeffs, dtype=np.int64) @ m % self.p)


@dataclass(frozen=True)
class SubspaceFamily:
    """All r-subspaces of F_p^n in canonical order."""

    p: Prime
    n: int
    r: int
    members: tuple[Subspace, ...]
    index: dict = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.members)

    def __getitem__(self, i: int) -> Subspace:
        return self.members[i]

    def position(self, s: Subspace) -> int:
        return self.index[s.basis]

    def bases(self) -> np.ndarray:
        """Stacked bases, shape ``(len(self), r, n)``."""
        if not self.members:
            return np.zeros((0, self.r, self.n), dtype=np.int64)
        return np.array([m.basis for m in self.members], dtype=np.int64).reshape(len(self), self.r, self.n)


def _rref_templates(p: int, n: int, r: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    for pivots in itertools.combinations(range(n), r):
        pset = set(pivots)
        free = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, n) if j not in pset]
        base = np.zeros((r, n), dtype=np.int64)
        for i, c in enumerate(pivots):
            base[i, c] = 1
        for values in itertools.product(range(p), repeat=len(free)):
            m = base.copy()
            for (i, j), v in zip(free, values):
                m[i, j] = v
            yield tuple(tuple(int(x) for x in row) for row in m)


def enumerate_subspaces(p: int, n: int, r: int, *, cap: int | None = None, override: bool = False) -> SubspaceFamily:
    """Enumerate all r-subspaces of F_p^n.

    Raises :class:`ResourceGuardError` when the family is larger than ``cap``
    (default: :func:`config.max_family_size`) and ``override`` is false.
    """
    p = Prime(p)
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    size = gaussian_binomial(n, r, p)
    limit = config.max_family_size() if cap is None else cap
    if size > limit and not (override or config.guard_overridden()):
        raise ResourceGuardError(
            f"{size} subspaces of dimension {r} in F_{p}^{n} exceeds the cap of {limit}; "
            f"pass override=True or set {config.OVERRIDE_ENV}=1"
        )
    bases = sorted(_rref_templates(p, n, r), key=lambda b: tuple(itertools.chain.from_iterable(b)))
    members = tuple(Subspace(p, n, b) for b in bases)
    assert len(members) == size
    return SubspaceFamily(p, n, r, members, {m.basis: i for i, m in enumerate(members)})


def _check_compatible(a: Subspace, b: Subspace) -> None:
    if a.p != b.p or a.n != b.n:
        raise ValueError(f"subspaces live in different spaces: F_{a.p}^{a.n} vs F_{b.p}^{b.n}")


def intersection_dim(a: Subspace, b: Subspace) -> int:
    _check_compatible(a, b)
    if a.dim == 0 or b.dim == 0:
        return 0
    stacked = np.vstack([a.matrix, b.matrix])
    return a.dim + b.dim - rank_mod_p(stacked, a.p)


def is_incident(a: Subspace, b: Subspace) -> bool:
    """True iff the two subspaces meet only in the zero vector."""
    return intersection_dim(a, b) == 0


def _batched_rank(m: np.ndarray, p: int) -> np.ndarray:
    """Ranks mod p of a stack of small matrices, shape ``(B, rows, cols)``."""
    m = m % p
    nb, rows, cols = m.shape
    rank = np.zeros(nb, dtype=np.int64)
    inverse = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    row_ids = np.arange(rows)
    for j in range(cols):
        cand = (m[:, :, j] != 0) & (row_ids[None, :] >= rank[:, None])
        b = np.flatnonzero(cand.any(axis=1))
        if b.size == 0:
            continue
        src = cand[b].argmax(axis=1)
        dst = rank[b]
        moved = m[b, src].copy()
        m[b, src] = m[b, dst]
        m[b, dst] = moved * inverse[moved[:, j]][:, None] % p
        factors = m[b, :, j].copy()
        factors[np.arange(b.size), dst] = 0
        m[b] = (m[b] - factors[:, :, None] * m[b, dst][:, None, :]) % p
        rank[b] += 1
    return rank


def intersection_dims(rows: SubspaceFamily, cols: SubspaceFamily, chunk: int = 1 << 20) -> np.ndarray:
    """Matrix of ``dim(x ∩ y)`` for x in ``rows`` and y in ``cols``.

    Vectorized equivalent of calling :func:`intersection_dim` on every pair.
    Each y is reduced modulo the RREF basis of x; what remains spans
    ``(x + y) / x``, whose dimension is ``dim y - dim(x ∩ y)``.
    """
    if rows.p != cols.p or rows.n != cols.n:
        raise ValueError("families live in different spaces")
    p, n = int(rows.p), rows.n
    out = np.empty((len(rows), len(cols)), dtype=np.int64)
    if rows.r == 0 or cols.r == 0:
        out[:] = 0
        return out
    xb = rows.bases()
    yb = cols.bases()
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, x in enumerate(rows):
        groups.setdefault(x.pivots, []).append(i)
    step = max(1, chunk // max(1, len(cols) * cols.r * n))
    for piv, idx in groups.items():
        piv = list(piv)
        rest = [j for j in range(n) if j not in piv]
        coeff = yb[:, :, piv]  # (Ny, s, r)
        for start in range(0, len(idx), step):
            sel = np.array(idx[start:start + step])
            # reduced[a, b] = y_b - y_b[:, piv] @ x_a, restricted to non-pivot columns
            proj = np.einsum("bsr,arn->absn", coeff, xb[sel][:, :, rest])
            reduced = (yb[None][:, :, :, rest] - proj) % p
            flat = reduced.reshape(-1, cols.r, len(rest))
            rk = _batched_rank(flat, p).reshape(len(sel), len(cols))
            out[sel] = cols.r - rk
    return out
