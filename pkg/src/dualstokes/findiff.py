"""Exact symmetric finite differences and the normalisation coefficients
1 / (m (r+1)!) that turn signed power sums into indices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

__all__ = [
    "NormalizationSpec",
    "LEVELS",
    "central_difference",
    "monomial",
    "normalization",
    "peval",
    "stencil",
]

Rational = Fraction | int


def peval(coeffs: Sequence[Rational], x: Rational) -> Fraction:
    """Evaluate a dense polynomial given lowest coefficient first (Horner)."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def monomial(k: int) -> tuple[int, ...]:
    return (0,) * k + (1,)


def stencil(r: int, step: Rational = 1) -> list[tuple[int, Fraction]]:
    """(weight, offset) pairs of the r-th central difference.

    Offsets are ``(r/2 - k) * step``: half-integer for odd ``r`` and
    integer for even ``r`` when ``step`` is 1.
    """
    if r < 1:
        raise ValueError("difference order must be at least 1")
    step = Fraction(step)
    return [((-1) ** k * comb(r, k), (Fraction(r, 2) - k) * step) for k in range(r + 1)]


def central_difference(r: int, step: Rational, f: Sequence[Rational], x: Rational) -> Fraction:
    x = Fraction(x)
    return sum((w * peval(f, x + off) for w, off in stencil(r, step)), Fraction(0))


@dataclass(frozen=True)
class NormalizationSpec:
    r: int
    m: int

    def __post_init__(self):
        if self.r < 1 or self.m < 1:
            raise ValueError("need r >= 1 and m >= 1")

    @property
    def coefficient(self) -> Fraction:
        return Fraction(1, self.m * factorial(self.r + 1))


def normalization(r: int, m: int) -> Fraction:
    return NormalizationSpec(r, m).coefficient


# (setting, level) -> (difference order, multiplicity)
LEVELS: dict[tuple[str, str], tuple[int, int]] = {
    ("surface", "edge"): (1, 3),
    ("surface", "face"): (2, 3),
    ("surface", "region"): (3, 1),
    ("curve", "edge"): (1, 1),
    ("curve", "region"): (2, 1),
}
