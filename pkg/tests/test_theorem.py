import json

import numpy as np
import pytest

import skewlines.theorem as theorem
from skewlines.geometry import ResourceGuardError, gaussian_binomial
from skewlines.theorem import (
    closed_forms,
    multiplicity_polynomial_identities,
    polynomial_identity_checks,
    truncated_power_coefficient,
    verify_rank_structure,
    verify_theorem,
)


def small_primes(limit):
    return [n for n in range(2, limit + 1) if all(n % d for d in range(2, int(n**0.5) + 1))]


@pytest.mark.parametrize(
    "p,e,sign,v",
    [
        (2, (6, 14, 8, 6, 1), 1, 52),
        (3, (19, 71, 20, 19, 1), -1, 172),
        (5, (85, 565, 70, 85, 1), -1, 964),
        (7, (231, 2219, 168, 231, 1), -1, 3252),
    ],
)
def test_closed_form_values(p, e, sign, v):
    cf = closed_forms(p)
    assert cf.e == e
    assert (cf.det_sign, cf.det_valuation) == (sign, v)
    assert sum(e) == gaussian_binomial(4, 2, p)


def test_closed_form_dims_p2():
    cf = closed_forms(2)
    assert cf.dims == (4, 6, 4)
    assert cf.counts == (15, 35, 15)
    assert cf.kernel_dim == 29
    assert (cf.phi_rank, cf.psi_rank, cf.phi_plus_psi_rank) == (10, 10, 14)
    assert cf.eig == {16: 1, 2: 20, -4: 14}


def test_invariants_hold_up_to_100():
    for p in small_primes(100):
        assert closed_forms(p).invariant_violations() == []


def test_dims_are_truncated_power_coefficients():
    # the graded pieces of degree i(p-1) in four variables with exponents < p
    for p in small_primes(30):
        cf = closed_forms(p)
        assert cf.dims == tuple(truncated_power_coefficient(p, i * (p - 1)) for i in (1, 2, 3))


def test_closed_forms_rejects_composite():
    with pytest.raises(ValueError, match="p must be prime"):
        closed_forms(9)


def test_polynomial_identities():
    assert multiplicity_polynomial_identities()
    checks = polynomial_identity_checks()
    assert len(checks) == 30
    assert checks["p=7: sum i e_i"].computed == 3252


@pytest.mark.parametrize("p", [2, 3])
def test_verify_theorem_small(p):
    report = verify_theorem(p, "both")
    assert report.passed, [c.as_dict() for c in report.checks.failures]
    assert report.profile.counts(5) == closed_forms(p).e
    names = [c.name for c in report.checks]
    for needle in ("engines agree", "f_i (filtration)", "det sign", "spectrum: trace(A)", "counting: a_xy three cases"):
        assert needle in names


@pytest.mark.parametrize("engine", ["bigint", "p_local"])
def test_single_engine(engine):
    report = verify_theorem(2, engine)
    assert report.passed
    assert report.engine == engine
    assert f"f_i ({engine})" in [c.name for c in report.checks]


def test_report_json_and_table():
    report = verify_theorem(2)
    d = json.loads(report.to_json())
    assert d["profile"] == {"p": 2, "size": 35, "multiplicities": {"0": 6, "1": 14, "2": 8, "3": 6, "4": 1}}
    assert "timing" in d
    assert "timing" not in report.as_dict(include_timing=False)
    table = report.table()
    for div, mult in [(1, 6), (2, 14), (4, 8), (8, 6), (16, 1)]:
        assert any(row.split("|")[0].strip() == str(div) and row.split("|")[2].strip() == str(mult)
                   for row in table.splitlines() if "|" in row)
    assert "overall: PASS" in table


def test_failures_are_collected_not_raised(monkeypatch):
    broken = np.array(theorem.skew_matrix(2))
    broken[0, 1] = broken[1, 0] = 1 - broken[0, 1]
    monkeypatch.setattr(theorem, "skew_matrix", lambda p, override=False: broken)
    report = verify_theorem(2, "both")
    assert not report.passed
    failed = {c.name for c in report.checks.failures}
    assert "A^2 = p^3 I - (p^2 - p) A + (p^4 - p^3) J" in failed
    assert "f_i (bigint)" in failed
    # later sections still ran
    assert "spectrum: trace(A^2)" in [c.name for c in report.checks]
    assert "overall: FAIL" in report.table()


def test_rank_structure_p2():
    report = verify_rank_structure(2)
    assert report.passed
    c = report.checks
    ranks = tuple(c[name].computed for name in (
        "rank_p(A) = dim S_2",
        "rank_p(phi) = dim S_1 + dim S_2",
        "rank_p(psi) = dim S_2 + dim S_3",
        "rank_p([phi; psi]) = dim S_1 + dim S_2 + dim S_3",
    ))
    assert ranks == (6, 10, 10, 14)
    assert c["dim ker A mod p"].computed == 29


def test_rank_structure_p3():
    c = verify_rank_structure(3).checks
    assert c["rank_p(A) = dim S_2"].computed == 19
    assert c["rank_p([phi; psi]) = dim S_1 + dim S_2 + dim S_3"].computed == 39
    assert c["dim ker A mod p"].computed == 111


def test_guard_and_engine_validation(monkeypatch):
    monkeypatch.delenv("SKEWLINES_ALLOW_LARGE", raising=False)
    with pytest.raises(ResourceGuardError):
        verify_theorem(11)
    with pytest.raises(ResourceGuardError):
        verify_rank_structure(11)
    with pytest.raises(ValueError):
        verify_theorem(11, "both", override=True)
    with pytest.raises(ValueError):
        verify_theorem(2, "fast")
    with pytest.raises(ValueError, match="p must be prime"):
        verify_theorem(4)


@pytest.mark.slow
def test_verify_theorem_p5():
    report = verify_theorem(5, "p_local")
    assert report.passed, [c.as_dict() for c in report.checks.failures]
    assert report.profile.counts(5) == (85, 565, 70, 85, 1)


@pytest.mark.slow
def test_rank_structure_p5():
    report = verify_rank_structure(5)
    assert report.passed, [c.as_dict() for c in report.checks.failures]
