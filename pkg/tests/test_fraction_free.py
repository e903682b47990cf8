import numpy as np
import pytest
import sympy

from skewlines.exact import determinant, rank_over_rationals
from skewlines.exact.modular import det_mod, multimodular_determinant, multimodular_rank


def test_small_determinants():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[2, 4], [1, 2]]) == 0
    assert determinant(np.zeros((0, 0), dtype=int)) == 1
    with pytest.raises(ValueError):
        determinant([[1, 2, 3]])
    with pytest.raises(ValueError):
        determinant([[1]], method="gauss")


def test_bareiss_matches_sympy(rng):
    for _ in range(60):
        n = int(rng.integers(1, 9))
        m = rng.integers(-50, 51, size=(n, n))
        if rng.random() < 0.2:
            m[-1] = m[0] + m[1 % n]
        assert determinant(m, "bareiss") == int(sympy.Matrix(m.tolist()).det())


def test_bareiss_matches_multimodular(rng):
    for _ in range(40):
        n = int(rng.integers(1, 25))
        m = rng.integers(-9, 10, size=(n, n))
        if rng.random() < 0.25:
            m[:, 0] = 0 if rng.random() < 0.5 else m[:, -1]
        assert determinant(m, "bareiss") == determinant(m, "multimodular")


def test_huge_entries_multimodular():
    m = np.array([[10**30, 1], [1, 10**30]], dtype=object)
    assert multimodular_determinant(m) == 10**60 - 1
    assert determinant(m, "bareiss") == 10**60 - 1


def test_det_mod_consistent(rng):
    m = rng.integers(-9, 10, size=(8, 8))
    d = determinant(m)
    for q in (7, 101, 2**31 - 1):
        assert det_mod(m, q) == d % q


def test_rank_over_rationals(rng):
    for _ in range(60):
        rows, cols = rng.integers(1, 12, size=2)
        k = int(rng.integers(1, min(rows, cols) + 1))
        m = rng.integers(-5, 6, size=(rows, k)) @ rng.integers(-5, 6, size=(k, cols))
        want = sympy.Matrix(m.tolist()).rank()
        assert rank_over_rationals(m, "bareiss") == want
        assert multimodular_rank(m) == want
    assert rank_over_rationals(np.zeros((3, 0), dtype=int)) == 0


def test_rank_sees_past_unlucky_primes():
    # rank drops modulo the first multimodular prime; the bound forces more primes
    from skewlines.exact.modular import _modulus

    q = _modulus(0)
    m = np.array([[q, 0], [0, 1]], dtype=np.int64)
    assert multimodular_rank(m) == 2
    assert multimodular_determinant(m) == q
