"""p-local elementary divisors by elimination over Z / p^K.

Pivots are always of minimal p-adic valuation among the remaining entries.
Instead of searching valuations directly, the remaining block is kept divided
by p^shift: a pivot is any unit of the shifted block, and when no unit is
left the whole block is divisible by p and is divided once more.

The cap K is trustworthy only while it stays above every exponent that
occurs, so elimination restarts with 2K whenever the shift reaches K - 2,
and when fewer pivots than the rational rank were found.
"""

from __future__ import annotations

import numpy as np

from ..gfp import Prime
from .fraction_free import BAREISS_LIMIT, determinant, rank_over_rationals
from .profile import ElementaryDivisorProfile, valuation

__all__ = ["p_local_elementary_divisors", "EngineInconsistency", "INITIAL_PRECISION", "MAX_PRECISION"]

INITIAL_PRECISION = 8
MAX_PRECISION = 1024

_INT64_MAX = 2**63 - 1


class EngineInconsistency(RuntimeError):
    """Two routes to the same invariant disagreed."""


class _Escalate(Exception):
    pass


def _reduce(arr: np.ndarray, modulus: int) -> np.ndarray:
    if (modulus - 1) ** 2 * 2 < _INT64_MAX:
        if arr.dtype == object:
            return np.array([[int(x) % modulus for x in row] for row in arr], dtype=np.int64).reshape(arr.shape)
        return np.mod(arr.astype(np.int64), modulus)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = int(x) % modulus
    return out


def _eliminate(m: np.ndarray, p: int, precision: int) -> tuple[list[int], bool]:
    """Pivot valuations found before the block vanished mod p^precision.

    The flag is true when every diagonal position received a pivot.
    """
    modulus = p**precision
    a = _reduce(m, modulus)
    lazy = a.dtype != object
    rows, cols = a.shape
    diag = min(rows, cols)
    shift = 0
    step = (modulus - 1) ** 2
    bound = modulus - 1
    vals: list[int] = []
    t = 0
    active = cols  # columns [active, cols) hold no unit at the current shift
    while t < diag:
        unit_row = -1
        while active > t:
            col = a[t:, t] % modulus if lazy else a[t:, t]
            units = np.flatnonzero((col % p) != 0)
            if units.size:
                unit_row = t + int(units[0])
                break
            active -= 1
            if active != t:
                a[:, [t, active]] = a[:, [active, t]]
        if unit_row < 0:
            if lazy:
                a[t:, t:] %= modulus
                bound = modulus - 1
            block = a[t:, t:]
            if not block.any():
                return vals, False
            if shift + 1 >= precision - 2:
                raise _Escalate
            a[t:, t:] = block // p
            shift += 1
            modulus //= p
            step = (modulus - 1) ** 2
            active = cols
            continue
        if unit_row != t:
            a[[t, unit_row], t:] = a[[unit_row, t], t:]
        col = a[t:, t] % modulus
        below = col[1:]
        if below.any():
            inv = pow(int(col[0]), -1, modulus)
            prow = a[t, t + 1:] % modulus * inv % modulus
            if lazy and bound + step > _INT64_MAX:
                a[t + 1:, t + 1:] %= modulus
                bound = modulus - 1
            a[t + 1:, t + 1:] -= np.outer(below, prow)
            if lazy:
                bound += step
            else:
                a[t + 1:, t + 1:] %= modulus
        vals.append(shift)
        t += 1
    return vals, True


def p_local_elementary_divisors(
    m,
    p: int,
    *,
    precision: int = INITIAL_PRECISION,
    det_valuation: int | None = None,
    validate: bool = True,
) -> ElementaryDivisorProfile:
    """Multiplicity of each p**i among the elementary divisors of ``m``.

    ``det_valuation`` (v_p of |det m|), when given, is checked against the
    result for square nonsingular input; otherwise it is computed by
    fraction-free elimination for matrices up to ``BAREISS_LIMIT`` rows.
    Larger nonsingular matrices are certified by the full set of pivots all
    having valuation below the cap.
    """
    p = Prime(p)
    arr = np.asarray(m)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {arr.shape}")
    rows, cols = arr.shape
    diag = min(rows, cols)
    rational_rank = None
    while precision <= MAX_PRECISION:
        try:
            vals, full = _eliminate(arr, int(p), precision)
        except _Escalate:
            precision *= 2
            continue
        if not full:
            if rational_rank is None:
                rational_rank = rank_over_rationals(arr)
            if len(vals) < rational_rank:
                precision *= 2
                continue
        profile = ElementaryDivisorProfile.from_exponents(p, vals, diag, diag - len(vals))
        if validate and rows == cols and full:
            expected = det_valuation
            if expected is None and rows <= BAREISS_LIMIT:
                expected = valuation(determinant(arr), p)
            if expected is not None and profile.valuation_sum() != expected:
                if precision * 2 > MAX_PRECISION:
                    raise EngineInconsistency(
                        f"sum of i*f_i is {profile.valuation_sum()} but v_p(det) is {expected}"
                    )
                precision *= 2
                continue
        return profile
    raise EngineInconsistency(f"precision cap exceeded {MAX_PRECISION} without a certified result")
