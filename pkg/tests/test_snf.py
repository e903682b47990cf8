import math

import numpy as np
import pytest
from oracles import minors_oracle, random_unimodular

from skewlines.exact import determinant, smith_normal_form


def test_known_examples():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).diagonal == [2, 6, 12]
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == [0, 0]
    assert smith_normal_form([[6]]).diagonal == [6]
    assert smith_normal_form([[-6]]).diagonal == [6]
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal == [1, 6]
    assert smith_normal_form(np.zeros((0, 3), dtype=int)).diagonal == []


def test_rectangular():
    res = smith_normal_form([[1, 2, 3], [4, 5, 6]])
    assert res.diagonal == [1, 3]
    assert res.shape == (2, 3)
    assert res.rank == 2


def test_minors_oracle(rng):
    for _ in range(120):
        rows, cols = rng.integers(1, 7, size=2)
        m = rng.integers(-9, 10, size=(rows, cols))
        if rng.random() < 0.2:
            m[:, 0] = 2 * m[:, -1]
        assert smith_normal_form(m).diagonal == minors_oracle(m)


def test_divisibility_chain(rng):
    for _ in range(100):
        m = rng.integers(-20, 21, size=rng.integers(1, 10, size=2))
        d = smith_normal_form(m).diagonal
        for a, b in zip(d, d[1:]):
            assert (b == 0) if a == 0 else b % a == 0
        assert all(x >= 0 for x in d)


def test_witnesses(rng):
    for _ in range(60):
        m = rng.integers(-9, 10, size=rng.integers(1, 8, size=2))
        res = smith_normal_form(m, want_witnesses=True)
        u, v = res.left, res.right
        assert np.array_equal(u @ np.asarray(m, dtype=object) @ v, res.matrix())
        assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1


def test_unimodular_invariance(rng):
    m = rng.integers(-9, 10, size=(7, 6))
    m[:, 5] = m[:, 0] * 3 - m[:, 1]
    base = smith_normal_form(m).diagonal
    for _ in range(100):
        u = random_unimodular(7, rng)
        v = random_unimodular(6, rng)
        assert smith_normal_form(u @ m.astype(object) @ v).diagonal == base


def test_big_entries():
    m = [[2**80, 0], [0, 3 * 2**80]]
    assert smith_normal_form(m).diagonal == [2**80, 3 * 2**80]


@pytest.mark.parametrize("p", [2, 3])
def test_skew_matrix_diagonal_product_is_det(p):
    from skewlines.incidence import skew_matrix

    a = skew_matrix(p)
    d = smith_normal_form(a).diagonal
    assert math.prod(d) == abs(determinant(a))
