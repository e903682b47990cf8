"""Integer incidence matrices between subspace families of F_p^n.

``eta(r, s)`` has rows indexed by the r-subspaces, columns by the
s-subspaces, and a 1 wherever the two meet trivially. ``psi`` has rows indexed
by hyperplanes (n = 4, so 3-subspaces) and a 1 wherever the line is *not*
contained in the hyperplane. Maps are stored domain-on-rows.

All matrices are numpy arrays of dtype int64, or dtype object when entries
could leave the int64 range.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .geometry import enumerate_subspaces, gaussian_binomial, intersection_dims
from .gfp import Prime
from .intmat import exact_matmul
from .report import CheckList

__all__ = [
    "IncidenceSpec",
    "build_eta",
    "build_incidence",
    "build_psi",
    "build_phi",
    "skew_matrix",
    "all_ones",
    "exact_matmul",
    "verify_matrix_identity",
    "verify_counting_lemmas",
]


@dataclass(frozen=True)
class IncidenceSpec:
    p: Prime
    n: int = 4
    r: int = 2
    s: int = 2
    kind: str = "skew"

    def __post_init__(self):
        object.__setattr__(self, "p", Prime(self.p))
        if self.kind not in ("skew", "psi"):
            raise ValueError(f"kind must be 'skew' or 'psi', got {self.kind!r}")
        if not (1 <= self.r <= self.n - 1 and 1 <= self.s <= self.n - 1):
            raise ValueError(f"need 1 <= r, s <= n-1, got r={self.r}, s={self.s}, n={self.n}")
        if self.kind == "psi" and self.r != self.n - 1:
            raise ValueError("the hyperplane-complement matrix needs r = n - 1")


@functools.lru_cache(maxsize=32)
def _cached_incidence(p: int, n: int, r: int, s: int, kind: str, override: bool) -> np.ndarray:
    rows = enumerate_subspaces(p, n, r, override=override)
    cols = enumerate_subspaces(p, n, s, override=override)
    dims = intersection_dims(rows, cols)
    if kind == "skew":
        m = (dims == 0).astype(np.int64)
    else:
        m = (dims < s).astype(np.int64)
    m.setflags(write=False)
    return m


def build_eta(spec: IncidenceSpec, *, override: bool = False) -> np.ndarray:
    """Skew-incidence matrix between r-subspaces (rows) and s-subspaces (columns)."""
    if spec.kind != "skew":
        raise ValueError("build_eta needs kind='skew'")
    return _cached_incidence(int(spec.p), spec.n, spec.r, spec.s, "skew", override)


def build_incidence(spec: IncidenceSpec, *, override: bool = False) -> np.ndarray:
    """Either kind of matrix named by ``spec``."""
    return _cached_incidence(int(spec.p), spec.n, spec.r, spec.s, spec.kind, override)


def build_psi(p: int, *, n: int = 4, override: bool = False) -> np.ndarray:
    """Rows: hyperplanes, columns: lines; entry 1 iff the line is not inside the hyperplane."""
    spec = IncidenceSpec(p, n, n - 1, 2, "psi")
    return _cached_incidence(int(spec.p), n, n - 1, 2, "psi", override)


def build_phi(p: int, *, n: int = 4, override: bool = False) -> np.ndarray:
    """Rows: points, columns: lines; entry 1 iff the point is off the line."""
    return build_eta(IncidenceSpec(p, n, 1, 2), override=override)


def skew_matrix(p: int, *, override: bool = False) -> np.ndarray:
    """The lines-versus-lines skewness matrix of PG(3, p)."""
    return build_eta(IncidenceSpec(p, 4, 2, 2), override=override)


def all_ones(rows: int, cols: int) -> np.ndarray:
    return np.ones((rows, cols), dtype=np.int64)


def verify_matrix_identity(a: np.ndarray, p: int) -> bool:
    """Exact check of ``A^2 + (p^2 - p) A - p^3 I - (p^4 - p^3) J == 0``."""
    p = Prime(p)
    a = np.asarray(a)
    size = gaussian_binomial(4, 2, p)
    if a.shape != (size, size):
        raise ValueError(f"expected a {size}x{size} matrix for p={p}, got shape {a.shape}")
    sq = exact_matmul(a, a)
    lhs = sq + (p * p - p) * a.astype(sq.dtype)
    # J only ever appears as a constant shift of every entry.
    lhs = lhs - (p**4 - p**3)
    lhs[np.diag_indices(size)] -= p**3
    return not np.any(lhs)


def _first_mismatches(found: np.ndarray, expected: np.ndarray, limit: int = 5) -> str:
    bad = np.argwhere(found != expected)[:limit]
    return "; ".join(f"(x={i}, y={j}, expected={expected[i, j]}, found={found[i, j]})" for i, j in bad)


def _case_values(found: np.ndarray, mask: np.ndarray) -> list[int]:
    return sorted({int(v) for v in found[mask]})


def verify_counting_lemmas(p: int, *, override: bool = False) -> CheckList:
    """Entrywise checks of the line-counting identities behind A^2 and A·φ^T.

    Row/column labels in failure details are canonical family positions.
    """
    p = Prime(p)
    a = skew_matrix(p, override=override)
    phi = build_phi(p, override=override)
    psi = build_psi(p, override=override)
    size = a.shape[0]
    eye = np.eye(size, dtype=bool)
    skew = a.astype(bool)
    meet = ~skew & ~eye
    out = CheckList()

    a2 = exact_matmul(a, a)
    expected = np.where(eye, p**4, np.where(skew, p**4 - p**3 - p**2 + p, p**4 - p**3))
    out.add(
        "a_xy three cases",
        {"equal": p**4, "skew": p**4 - p**3 - p**2 + p, "meet": p**4 - p**3},
        {"equal": _case_values(a2, eye), "skew": _case_values(a2, skew), "meet": _case_values(a2, meet)},
        passed=bool(np.array_equal(a2, expected)),
        detail=_first_mismatches(a2, expected),
    )

    # (A φ^T)[y, x]: lines z skew to y and missing the point x.
    b = exact_matmul(a, phi.T)
    on_line = phi.T == 0
    expected = np.where(on_line, p**4, p**4 - p**2)
    out.add(
        "b_xy two cases",
        {"point on line": p**4, "point off line": p**4 - p**2},
        {"point on line": _case_values(b, on_line), "point off line": _case_values(b, ~on_line)},
        passed=bool(np.array_equal(b, expected)),
        detail=_first_mismatches(b, expected),
    )

    c = exact_matmul(a, psi.T)
    out.add(
        "A psi^T divisible by p^2",
        0,
        int(np.count_nonzero(c % (p * p))),
        detail=_first_mismatches(c % (p * p), np.zeros_like(c)),
    )

    gamma = a + (p * p - p) * np.eye(size, dtype=np.int64)
    g = exact_matmul(a, gamma)
    out.add(
        "A gamma divisible by p^3",
        0,
        int(np.count_nonzero(g % p**3)),
        detail=_first_mismatches(g % p**3, np.zeros_like(g)),
    )

    ones = a.sum(axis=1)
    out.add("A 1 = p^4 1", [p**4], sorted({int(v) for v in ones}))
    return out
