"""Dense Laurent polynomials with real coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable

import numpy as np

from .model import CouplingPattern, EdgeDistribution, check_distribution


@dataclass(frozen=True, eq=False)
class LaurentPoly:
    """``coeffs[k]`` is the coefficient of ``X**(lo + k)``.

    Exact zeros at either end are trimmed on construction; the zero
    polynomial is stored as ``lo=0, coeffs=[]``.
    """

    lo: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float, copy=True).ravel()
        nz = np.flatnonzero(c)
        if nz.size == 0:
            lo, c = 0, c[:0]
        else:
            lo = int(self.lo) + int(nz[0])
            c = c[nz[0]: nz[-1] + 1]
        c.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def constant(cls, value: float = 1.0) -> "LaurentPoly":
        return cls(0, np.array([value]))

    @classmethod
    def monomial(cls, degree: int, value: float = 1.0) -> "LaurentPoly":
        return cls(degree, np.array([value]))

    @property
    def hi(self) -> int:
        """Highest degree (``lo - 1`` for the zero polynomial)."""
        return self.lo + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero() or other.is_zero():
            return LaurentPoly(0, np.zeros(0))
        return LaurentPoly(self.lo + other.lo, np.convolve(self.coeffs, other.coeffs))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = np.zeros(hi - lo + 1)
        out[self.lo - lo: self.hi - lo + 1] += self.coeffs
        out[other.lo - lo: other.hi - lo + 1] += other.coeffs
        return LaurentPoly(lo, out)

    def scale(self, factor: float) -> "LaurentPoly":
        return LaurentPoly(self.lo, self.coeffs * factor)

    def __call__(self, x: float) -> float:
        if self.is_zero():
            return 0.0
        k = np.arange(self.lo, self.hi + 1)
        return float(np.sum(self.coeffs * np.power(float(x), k)))

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.lo == other.lo and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"LaurentPoly(lo={self.lo}, coeffs={self.coeffs.tolist()})"


def from_distribution(pattern: CouplingPattern, dist: EdgeDistribution) -> LaurentPoly:
    """Coupling polynomial ``sum_i p_i X**a_i``."""
    check_distribution(pattern, dist)
    return from_weights(pattern, dist.as_array())


def from_weights(pattern: CouplingPattern, p: np.ndarray) -> LaurentPoly:
    # Unvalidated variant used by the optimizers and finite-difference checks.
    c = np.zeros(pattern.memory + 1)
    c[list(pattern.a)] = p
    return LaurentPoly(0, c)


def product(factors: Iterable[LaurentPoly]) -> LaurentPoly:
    factors = list(factors)
    if not factors:
        raise ValueError("product of an empty list")
    return reduce(lambda x, y: x * y, factors)


def power(f: LaurentPoly, n: int) -> LaurentPoly:
    if n == 0:
        return LaurentPoly.constant(1.0)
    return product([f] * n)


def reverse(f: LaurentPoly) -> LaurentPoly:
    """Substitute ``X -> 1/X``."""
    if f.is_zero():
        return f
    return LaurentPoly(-f.hi, f.coeffs[::-1])


def dilate2(f: LaurentPoly) -> LaurentPoly:
    """Substitute ``X -> X**2``."""
    if f.is_zero():
        return f
    out = np.zeros(2 * len(f.coeffs) - 1)
    out[::2] = f.coeffs
    return LaurentPoly(2 * f.lo, out)


def coeff(f: LaurentPoly, k: int) -> float:
    idx = k - f.lo
    if 0 <= idx < len(f.coeffs):
        return float(f.coeffs[idx])
    return 0.0
