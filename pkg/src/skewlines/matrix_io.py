"""Matrix Market (coordinate, integer, general) and dense CSV export/import."""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse

__all__ = ["ordering_comment", "write_matrix", "read_matrix", "write_matrix_market", "read_matrix_market", "write_csv", "read_csv"]

MM_HEADER = "%%MatrixMarket matrix coordinate integer general"


def ordering_comment(p: int, n: int, r: int, s: int, kind: str = "skew") -> str:
    relation = "x and y meet only in 0" if kind == "skew" else "y is not contained in x"
    return "\n".join([
        f"incidence matrix over F_{p}^{n}: rows = {r}-subspaces x, columns = {s}-subspaces y",
        f"entry 1 iff {relation}",
        "ordering: each subspace is keyed by its reduced row echelon basis, flattened row-major,",
        "entries read as integers in [0, p-1]; rows and columns ascend lexicographically on that key",
        "indices are 1-based",
    ])


def write_matrix_market(path, m: np.ndarray, comment: str = "") -> None:
    m = np.asarray(m, dtype=np.int64)
    buf = io.BytesIO()
    scipy.io.mmwrite(buf, scipy.sparse.coo_matrix(m), comment=comment, field="integer", symmetry="general")
    text = buf.getvalue().decode()
    if not text.startswith(MM_HEADER):
        raise RuntimeError(f"unexpected Matrix Market header: {text.splitlines()[0]!r}")
    Path(path).write_text(text)


def read_matrix_market(path) -> np.ndarray:
    with open(path, "rb") as fh:
        m = scipy.io.mmread(fh)
    if scipy.sparse.issparse(m):
        m = m.toarray()
    return np.asarray(m, dtype=np.int64)


def write_csv(path, m: np.ndarray, comment: str = "") -> None:
    m = np.asarray(m, dtype=np.int64)
    np.savetxt(path, m, fmt="%d", delimiter=",", header=comment, comments="# ")


def read_csv(path) -> np.ndarray:
    return np.loadtxt(path, dtype=np.int64, delimiter=",", comments="#", ndmin=2)


def write_matrix(path, m: np.ndarray, fmt: str = "mm", comment: str = "") -> None:
    if fmt == "mm":
        write_matrix_market(path, m, comment)
    elif fmt == "csv":
        write_csv(path, m, comment)
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")


def read_matrix(path, fmt: str | None = None) -> np.ndarray:
    if fmt is None:
        fmt = "csv" if str(path).endswith(".csv") else "mm"
    if fmt not in ("mm", "csv"):
        raise ValueError(f"unknown matrix format {fmt!r}")
    return read_csv(path) if fmt == "csv" else read_matrix_market(path)
