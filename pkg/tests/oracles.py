"""Brute-force reference implementations shared by the tests."""

import itertools
import math

import numpy as np

from skewlines.exact import ElementaryDivisorProfile, determinant, filtration_dims


def minors_oracle(m):
    """Invariant factors from gcds of k x k minors: d_k = D_k / D_{k-1}."""
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in itertools.combinations(range(rows), k):
            for c in itertools.combinations(range(cols), k):
                g = math.gcd(g, determinant(m[np.ix_(r, c)]))
        if g == 0:
            out += [0] * (min(rows, cols) - k + 1)
            break
        out.append(g // prev)
        prev = g
    return out


def random_unimodular(n, rng, steps=12):
    u = np.eye(n, dtype=object)
    for _ in range(steps):
        if n > 1:
            i, j = rng.choice(n, size=2, replace=False)
            u[i] += int(rng.integers(-3, 4)) * u[j]
        if rng.random() < 0.3:
            k = rng.integers(n)
            u[k] = -u[k]
    return u[rng.permutation(n)]


def profile_from_filtration(m, p, i_max):
    dims = filtration_dims(m, p, i_max)
    rows, cols = m.shape
    diag = min(rows, cols)
    counts = {i: dims[i] - dims[i + 1] for i in range(i_max)}
    # what survives every power of p: zero invariant factors plus surplus columns
    zeros = dims[i_max] - (cols - diag)
    return ElementaryDivisorProfile(p, counts, diag, zeros)
