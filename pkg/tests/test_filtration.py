import numpy as np
import pytest

from skewlines.exact import filtration_bases, filtration_dims
from skewlines.gfp import rank_mod_p
from skewlines.incidence import skew_matrix


@pytest.mark.parametrize(
    "p,dims",
    [(2, [35, 29, 15, 7, 1, 0]), (3, [130, 111, 40, 20, 1, 0])],
)
def test_skew_matrix_filtration(p, dims):
    assert filtration_dims(skew_matrix(p), p, 5) == dims


def test_bases_are_nested_and_annihilated():
    p = 2
    a = skew_matrix(p)
    bases = filtration_bases(a, p, 5)
    assert [b.shape[0] for b in bases] == [35, 29, 15, 7, 1, 0]
    for i in range(1, 5):
        # M_{i+1} sits inside M_i
        assert rank_mod_p(np.vstack([bases[i], bases[i + 1]]), p) == bases[i].shape[0]
    # M_1 mod p is exactly the kernel of A mod p
    assert not ((a @ bases[1].T) % p).any()


def test_diagonal_example():
    m = np.diag([1, 3, 9, 27, 0])
    assert filtration_dims(m, 3, 4) == [5, 4, 3, 2, 1]


def test_non_increasing(rng):
    for _ in range(50):
        m = rng.integers(-9, 10, size=rng.integers(1, 9, size=2))
        d = filtration_dims(m, 2, 6)
        assert d[0] == m.shape[1]
        assert all(x >= y for x, y in zip(d, d[1:]))


def test_errors():
    with pytest.raises(ValueError):
        filtration_dims(np.eye(2), 2, -1)
    with pytest.raises(ValueError):
        filtration_dims(np.zeros(4), 2, 2)
