from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..gfp import Prime


def valuation(x: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    x = abs(int(x))
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class ElementaryDivisorProfile:
    """How often each power p**i occurs among the elementary divisors.

    ``size`` is the number of diagonal positions (min of the matrix
    dimensions) and ``zeros`` the number of zero invariant factors, so
    ``sum(multiplicities.values()) + zeros == size``.
    """

    p: Prime
    multiplicities: dict[int, int]
    size: int
    zeros: int = 0

    def __post_init__(self):
        object.__setattr__(self, "p", Prime(self.p))
        clean = {int(k): int(v) for k, v in sorted(self.multiplicities.items()) if v}
        if any(v < 0 for v in clean.values()) or any(k < 0 for k in clean):
            raise ValueError("multiplicities and exponents must be non-negative")
        object.__setattr__(self, "multiplicities", clean)
        if sum(clean.values()) + self.zeros != self.size:
            raise ValueError(
                f"multiplicities sum to {sum(clean.values())} plus {self.zeros} zeros, expected {self.size}"
            )

    @classmethod
    def from_exponents(cls, p: int, exponents: Iterable[int], size: int, zeros: int = 0) -> "ElementaryDivisorProfile":
        counts: dict[int, int] = {}
        for e in exponents:
            counts[int(e)] = counts.get(int(e), 0) + 1
        return cls(p, counts, size, zeros)

    @classmethod
    def from_diagonal(cls, p: int, diagonal: Iterable[int]) -> "ElementaryDivisorProfile":
        """p-part of a list of invariant factors (zeros counted separately)."""
        diagonal = [int(d) for d in diagonal]
        nonzero = [d for d in diagonal if d]
        return cls.from_exponents(p, (valuation(d, p) for d in nonzero), len(diagonal), len(diagonal) - len(nonzero))

    @property
    def max_exponent(self) -> int:
        return max(self.multiplicities, default=0)

    def count(self, exponent: int) -> int:
        return self.multiplicities.get(exponent, 0)

    def counts(self, length: int | None = None) -> tuple[int, ...]:
        """``(f_0, f_1, ...)`` padded with zeros to ``length``."""
        if length is None:
            length = self.max_exponent + 1 if self.multiplicities else 0
        return tuple(self.count(i) for i in range(length))

    def valuation_sum(self) -> int:
        """Sum of i * f_i, the p-adic valuation of the product of nonzero divisors."""
        return sum(i * f for i, f in self.multiplicities.items())

    def divisors(self) -> dict[int, int]:
        """``{p**i: f_i}`` for exponents that occur."""
        return {int(self.p) ** i: f for i, f in self.multiplicities.items()}

    def as_dict(self) -> dict:
        top = self.max_exponent if self.multiplicities else -1
        d = {
            "p": int(self.p),
            "size": self.size,
            "multiplicities": {str(i): self.count(i) for i in range(top + 1)},
        }
        if self.zeros:
            d["zeros"] = self.zeros
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.as_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "ElementaryDivisorProfile":
        d = json.loads(text)
        return cls(d["p"], {int(k): v for k, v in d["multiplicities"].items()}, d["size"], d.get("zeros", 0))


@dataclass
class SnfResult:
    """Invariant factors d_1 | d_2 | ... and, optionally, U, V with U·M·V = diag."""

    diagonal: list[int]
    shape: tuple[int, int]
    left: np.ndarray | None = field(default=None, repr=False)
    right: np.ndarray | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def matrix(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=object)
        for i, d in enumerate(self.diagonal):
            out[i, i] = d
        return out

    def profile(self, p: int) -> ElementaryDivisorProfile:
        return ElementaryDivisorProfile.from_diagonal(p, self.diagonal)
