import numpy as np
import pytest

from skewlines.exact import EngineInconsistency, ElementaryDivisorProfile, p_local_elementary_divisors, smith_normal_form
from skewlines.incidence import skew_matrix


@pytest.mark.parametrize(
    "p,expected",
    [(2, {0: 6, 1: 14, 2: 8, 3: 6, 4: 1}), (3, {0: 19, 1: 71, 2: 20, 3: 19, 4: 1})],
)
def test_skew_matrix_profile(p, expected):
    prof = p_local_elementary_divisors(skew_matrix(p), p)
    assert prof.multiplicities == expected
    assert prof.zeros == 0


def test_precision_escalation():
    m = np.diag([3**20, 1, 9]).astype(object)
    prof = p_local_elementary_divisors(m, 3, precision=2)
    assert prof.multiplicities == {0: 1, 2: 1, 20: 1}


def test_high_valuation_off_diagonal(rng):
    for _ in range(30):
        u = rng.integers(-3, 4, size=(4, 4))
        m = u @ np.diag([1, 5, 5**9, 5**13]) @ u.T
        want = smith_normal_form(m).profile(5)
        assert p_local_elementary_divisors(m, 5, precision=3) == want


def test_singular_and_rectangular():
    m = np.array([[2, 4, 6], [1, 2, 3]])
    prof = p_local_elementary_divisors(m, 2)
    assert prof == ElementaryDivisorProfile(2, {0: 1}, 2, 1)
    prof = p_local_elementary_divisors(np.zeros((2, 5), dtype=int), 7)
    assert prof.zeros == 2 and prof.multiplicities == {}


def test_wrong_det_valuation_is_caught():
    with pytest.raises(EngineInconsistency):
        p_local_elementary_divisors(skew_matrix(2), 2, det_valuation=51)


def test_rejects_bad_input():
    with pytest.raises(ValueError, match="p must be prime"):
        p_local_elementary_divisors([[1]], 4)
    with pytest.raises(ValueError):
        p_local_elementary_divisors(np.zeros(3), 2)
