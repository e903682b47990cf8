import itertools

import numpy as np
import pytest

from skewlines.geometry import (
    ResourceGuardError,
    Subspace,
    enumerate_subspaces,
    gaussian_binomial,
    intersection_dim,
    intersection_dims,
    is_incident,
)


def span_sets(p, n, r):
    """Every r-subspace of F_p^n as the frozenset of its vectors, by brute force."""
    vectors = list(itertools.product(range(p), repeat=n))
    found = set()
    for gens in itertools.combinations(vectors[1:], r):
        pts = {tuple(np.asarray(c) @ np.asarray(gens) % p) for c in itertools.product(range(p), repeat=r)}
        if len(pts) == p**r:
            found.add(frozenset(pts))
    return found


def test_gaussian_binomial_values():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(4, 2, 3) == 130
    assert gaussian_binomial(4, 1, 5) == 156
    assert gaussian_binomial(4, 2, 7) == 2850
    assert gaussian_binomial(3, 5, 2) == 0
    assert gaussian_binomial(3, -1, 2) == 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_gaussian_binomial_symmetry_and_pascal(p):
    for n in range(1, 7):
        for r in range(n + 1):
            assert gaussian_binomial(n, r, p) == gaussian_binomial(n, n - r, p)
            if 0 < r < n:
                rhs = gaussian_binomial(n - 1, r - 1, p) + p**r * gaussian_binomial(n - 1, r, p)
                assert gaussian_binomial(n, r, p) == rhs


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_family_sizes(p, n):
    for r in range(n + 1):
        fam = enumerate_subspaces(p, n, r)
        assert len(fam) == gaussian_binomial(n, r, p)


@pytest.mark.parametrize("p,n,r", [(2, 4, 2), (3, 3, 1), (3, 3, 2), (2, 5, 2)])
def test_enumeration_matches_span_sets(p, n, r):
    fam = enumerate_subspaces(p, n, r)
    got = {frozenset(s.vectors()) for s in fam}
    assert got == span_sets(p, n, r)


def test_canonical_order_and_index():
    fam = enumerate_subspaces(3, 4, 2)
    keys = [s.key() for s in fam]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
    for i in (0, 17, 129):
        assert fam.position(fam[i]) == i
    assert fam.bases().shape == (130, 2, 4)


def test_subspace_span_is_canonical():
    a = Subspace.span(3, [[1, 2, 0, 1], [0, 1, 1, 1]])
    b = Subspace.span(3, [[1, 0, 1, 2], [2, 0, 2, 1], [0, 2, 2, 2]])
    assert a == b
    assert a.dim == 2
    assert a.pivots == (0, 1)


def test_subspace_rejects_non_rref():
    with pytest.raises(ValueError):
        Subspace(2, 3, ((0, 1, 0), (1, 0, 0)))


def test_intersection_and_skewness():
    x = Subspace.span(2, [[1, 0, 0, 0], [0, 1, 0, 0]])
    y = Subspace.span(2, [[0, 0, 1, 0], [0, 0, 0, 1]])
    z = Subspace.span(2, [[1, 0, 0, 0], [0, 0, 1, 0]])
    assert intersection_dim(x, y) == 0 and is_incident(x, y)
    assert intersection_dim(x, z) == 1 and not is_incident(x, z)
    assert intersection_dim(x, x) == 2


@pytest.mark.parametrize("p,r,s", [(2, 2, 2), (3, 1, 2), (2, 3, 2), (3, 2, 3)])
def test_vectorized_intersections_match_pairwise(p, r, s):
    rows = enumerate_subspaces(p, 4, r)
    cols = enumerate_subspaces(p, 4, s)
    dims = intersection_dims(rows, cols)
    for i in range(0, len(rows), 7):
        for j in range(0, len(cols), 5):
            assert dims[i, j] == intersection_dim(rows[i], cols[j])


@pytest.mark.parametrize("p", [2, 3])
def test_skew_degree_is_p4(p):
    lines = enumerate_subspaces(p, 4, 2)
    degrees = (intersection_dims(lines, lines) == 0).sum(axis=1)
    assert set(degrees.tolist()) == {p**4}


def test_resource_guard(monkeypatch):
    with pytest.raises(ResourceGuardError):
        enumerate_subspaces(3, 4, 2, cap=100)
    assert len(enumerate_subspaces(3, 4, 2, cap=100, override=True)) == 130
    monkeypatch.setenv("SKEWLINES_MAX_FAMILY", "30")
    with pytest.raises(ResourceGuardError):
        enumerate_subspaces(2, 4, 2)
    monkeypatch.setenv("SKEWLINES_ALLOW_LARGE", "1")
    assert len(enumerate_subspaces(2, 4, 2)) == 35


def test_bad_arguments():
    with pytest.raises(ValueError, match="p must be prime"):
        enumerate_subspaces(4, 4, 2)
    with pytest.raises(ValueError):
        enumerate_subspaces(2, 3, 4)
