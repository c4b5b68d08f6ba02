"""Expected cycle-candidate metrics of a random partition and their gradients.

Every quantity here is a constant coefficient of a product of the coupling
polynomial ``f(X)``, its reflection ``f(1/X)`` and its dilation ``f(X**2)``.
Gradients are partial derivatives with respect to the raw probability vector
(no simplex constraint applied).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .laurent import LaurentPoly, coeff, dilate2, from_weights, power, product, reverse
from .model import CouplingPattern, EdgeDistribution, ValidationError, check_distribution, MAX_BASE_DIM

REFERENCE_S6_PER_BLOCK = 24
EXACT_S6_PER_BLOCK = 72


@dataclass(frozen=True)
class StructureWeights:
    """Candidate counts per structure group and their ratios to ``w1``.

    ``w4`` lumps the three groups whose nodes are pairwise distinct, so they
    share one probability. ``s6_per_block`` is the number of 8-cycle
    candidates counted per 4x4 submatrix; the published closed form uses 24,
    while direct enumeration of K_{4,4} finds 72 (see ``cycles``).
    """

    gamma: int
    kappa: int
    w1: int
    w2: int
    w3: int
    w4: int
    s6_per_block: int = REFERENCE_S6_PER_BLOCK

    @property
    def wbar2(self) -> float:
        return self.w2 / self.w1

    @property
    def wbar3(self) -> float:
        return self.w3 / self.w1

    @property
    def wbar4(self) -> float:
        return self.w4 / self.w1

    def wbar1(self, w: float) -> float:
        """Weight of the six-cycle term after normalising by ``w1``."""
        return w * cycle6_count(self.gamma, self.kappa) / self.w1

    @property
    def total(self) -> int:
        return self.w1 + self.w2 + self.w3 + self.w4


def _check_dims(gamma: int, kappa: int) -> None:
    if not (2 <= gamma <= MAX_BASE_DIM and 2 <= kappa <= MAX_BASE_DIM):
        raise ValidationError(
            f"gamma and kappa must lie in [2, {MAX_BASE_DIM}], got ({gamma}, {kappa})"
        )


def cycle6_count(gamma: int, kappa: int) -> int:
    return 6 * comb(gamma, 3) * comb(kappa, 3)


def structure_weights(gamma: int, kappa: int, s6_per_block: int = REFERENCE_S6_PER_BLOCK) -> StructureWeights:
    _check_dims(gamma, kappa)
    g2, g3, g4 = comb(gamma, 2), comb(gamma, 3), comb(gamma, 4)
    k2, k3, k4 = comb(kappa, 2), comb(kappa, 3), comb(kappa, 4)
    w1 = g2 * k2
    w2 = 3 * g2 * k3 + 3 * g3 * k2
    w3 = 18 * g3 * k3
    w4 = 6 * g2 * k4 + 6 * g4 * k2 + 36 * g3 * k4 + 36 * g4 * k3 + s6_per_block * g4 * k4
    return StructureWeights(gamma, kappa, w1, w2, w3, w4, s6_per_block)


class _Polys:
    """The handful of polynomials every metric is built from."""

    def __init__(self, pattern: CouplingPattern, p):
        self.a = np.array(pattern.a)
        self.f = from_weights(pattern, np.asarray(p, dtype=float))
        self.fb = reverse(self.f)
        self.f2 = dilate2(self.f)
        self.f2b = reverse(self.f2)

    def prod(self, nf=0, nfb=0, nf2=0, nf2b=0) -> LaurentPoly:
        return product([power(self.f, nf), power(self.fb, nfb),
                        power(self.f2, nf2), power(self.f2b, nf2b)])

    def at(self, poly: LaurentPoly, scale: int, sign: int = 1) -> np.ndarray:
        return np.array([coeff(poly, sign * scale * int(ai)) for ai in self.a])


def _polys(pattern, dist) -> _Polys:
    if isinstance(dist, EdgeDistribution):
        check_distribution(pattern, dist)
        return _Polys(pattern, dist.as_array())
    p = np.asarray(dist, dtype=float)
    if p.shape != (len(pattern),):
        raise ValidationError(f"distribution length {p.size} != pattern length {len(pattern)}")
    return _Polys(pattern, p)


def p6(pattern: CouplingPattern, dist) -> float:
    """Probability that a six-cycle candidate survives a random partition."""
    q = _polys(pattern, dist)
    return coeff(q.prod(nf=3, nfb=3), 0)


def p8_structures(pattern: CouplingPattern, dist) -> tuple[float, ...]:
    """Survival probabilities of eight-cycle candidates of structures S1..S6."""
    q = _polys(pattern, dist)
    s1 = coeff(q.prod(nf=2, nfb=2), 0)
    s2 = coeff(q.prod(nf=2, nfb=2, nf2=1, nf2b=1), 0)
    s3 = coeff(q.prod(nf=2, nfb=4, nf2=1), 0)
    s4 = coeff(q.prod(nf=4, nfb=4), 0)
    return (s1, s2, s3, s4, s4, s4)


def n8(gamma: int, kappa: int, pattern: CouplingPattern, dist,
       s6_per_block: int = REFERENCE_S6_PER_BLOCK) -> float:
    """Expected number of eight-cycle candidates surviving a random partition."""
    sw = structure_weights(gamma, kappa, s6_per_block)
    s = p8_structures(pattern, dist)
    return sw.w1 * s[0] + sw.w2 * s[1] + sw.w3 * s[2] + sw.w4 * s[3]


def grad_p6(pattern: CouplingPattern, dist) -> np.ndarray:
    q = _polys(pattern, dist)
    return 6.0 * q.at(q.prod(nf=3, nfb=2), 1)


def grad_n8(gamma: int, kappa: int, pattern: CouplingPattern, dist,
            s6_per_block: int = REFERENCE_S6_PER_BLOCK) -> np.ndarray:
    """Gradient of ``n8 / w1``."""
    sw = structure_weights(gamma, kappa, s6_per_block)
    return _grad_n8(sw, _polys(pattern, dist))


def _grad_n8(sw: StructureWeights, q: _Polys) -> np.ndarray:
    g = 4.0 * q.at(q.prod(nf=2, nfb=1), 1)
    g += sw.wbar2 * (2.0 * q.at(q.prod(nf=2, nfb=2, nf2=1), 2)
                     + 4.0 * q.at(q.prod(nf=2, nfb=1, nf2=1, nf2b=1), 1))
    g += sw.wbar3 * (q.at(q.prod(nf=2, nfb=4), 2, -1)
                     + 2.0 * q.at(q.prod(nf=1, nfb=4, nf2=1), 1, -1)
                     + 4.0 * q.at(q.prod(nf=2, nfb=3, nf2=1), 1))
    g += sw.wbar4 * 8.0 * q.at(q.prod(nf=4, nfb=3), 1)
    return g


def objective(gamma: int, kappa: int, pattern: CouplingPattern, dist, w: float,
              s6_per_block: int = REFERENCE_S6_PER_BLOCK) -> float:
    """Combined cost ``w * E[#6-candidates] + E[#8-candidates]``, divided by ``w1``."""
    if w < 0:
        raise ValidationError(f"cycle-6 weight must be >= 0, got {w}")
    sw = structure_weights(gamma, kappa, s6_per_block)
    s = p8_structures(pattern, dist)
    return (sw.wbar1(w) * p6(pattern, dist) + s[0]
            + sw.wbar2 * s[1] + sw.wbar3 * s[2] + sw.wbar4 * s[3])


def objective_gradient(gamma: int, kappa: int, pattern: CouplingPattern, dist, w: float,
                       s6_per_block: int = REFERENCE_S6_PER_BLOCK) -> np.ndarray:
    sw = structure_weights(gamma, kappa, s6_per_block)
    q = _polys(pattern, dist)
    return sw.wbar1(w) * 6.0 * q.at(q.prod(nf=3, nfb=2), 1) + _grad_n8(sw, q)
