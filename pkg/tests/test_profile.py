import json

import pytest

from skewlines.exact import ElementaryDivisorProfile, valuation


def test_valuation():
    assert valuation(48, 2) == 4
    assert valuation(-81, 3) == 4
    assert valuation(7, 5) == 0
    with pytest.raises(ValueError):
        valuation(0, 2)


def test_json_schema_and_order():
    prof = ElementaryDivisorProfile(2, {4: 1, 0: 6, 2: 8, 1: 14, 3: 6}, 35)
    text = prof.to_json()
    assert text == '{"p": 2, "size": 35, "multiplicities": {"0": 6, "1": 14, "2": 8, "3": 6, "4": 1}}'
    assert ElementaryDivisorProfile.from_json(text) == prof


def test_gaps_are_filled_with_zero():
    prof = ElementaryDivisorProfile.from_exponents(3, [0, 2, 2], 3)
    assert prof.as_dict()["multiplicities"] == {"0": 1, "1": 0, "2": 2}
    assert prof.counts(4) == (1, 0, 2, 0)
    assert prof.divisors() == {1: 1, 9: 2}
    assert prof.valuation_sum() == 4


def test_zeros_field():
    prof = ElementaryDivisorProfile.from_diagonal(2, [1, 4, 0])
    d = json.loads(prof.to_json())
    assert d["zeros"] == 1
    assert "zeros" not in ElementaryDivisorProfile.from_diagonal(2, [1, 4]).as_dict()


def test_validation():
    with pytest.raises(ValueError):
        ElementaryDivisorProfile(2, {0: 3}, 4)
    with pytest.raises(ValueError):
        ElementaryDivisorProfile(2, {0: -1, 1: 2}, 1)
    with pytest.raises(ValueError, match="p must be prime"):
        ElementaryDivisorProfile(6, {}, 0)
