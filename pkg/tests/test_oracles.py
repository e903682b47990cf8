"""The three routes to elementary divisor profiles agree on random input."""

import pytest
from oracles import profile_from_filtration

from skewlines.exact import p_local_elementary_divisors, smith_normal_form


@pytest.mark.parametrize("p", [2, 3, 5])
def test_three_engines_agree(p, rng):
    for _ in range(500):
        rows, cols = rng.integers(1, 13, size=2)
        m = rng.integers(-9, 10, size=(rows, cols))
        if rng.random() < 0.25:
            # force a p-heavy or singular column now and then
            m[:, rng.integers(cols)] = p**3 * m[:, rng.integers(cols)]
        snf = smith_normal_form(m).profile(p)
        local = p_local_elementary_divisors(m, p)
        assert local == snf
        filt = profile_from_filtration(m, p, snf.max_exponent + 1)
        assert filt == snf
