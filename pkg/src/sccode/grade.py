"""Projected gradient descent for the edge distribution over a coupling pattern."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .metrics import objective, objective_gradient
from .model import CodeParameters, CouplingPattern, EdgeDistribution, ValidationError

log = logging.getLogger(__name__)

FLOOR = 1e-6
MAX_HALVINGS = 20


@dataclass(frozen=True)
class GradeConfig:
    epsilon: float = 1e-10
    alpha: float = 0.01
    w: float = 100.0
    max_iters: int = 100_000

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValidationError(f"epsilon must be > 0, got {self.epsilon}")
        if self.alpha <= 0:
            raise ValidationError(f"alpha must be > 0, got {self.alpha}")
        if self.max_iters < 1:
            raise ValidationError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.w < 0:
            raise ValidationError(f"w must be >= 0, got {self.w}")


@dataclass
class GradeResult:
    dist: EdgeDistribution
    trace: list[float] = field(default_factory=list)
    converged: bool = True
    iterations: int = 0

    @property
    def value(self) -> float:
        return self.trace[-1]


def _project(p: np.ndarray) -> np.ndarray:
    p = np.where(p <= 0.0, FLOOR, p)
    return p / p.sum()


def grade(params: CodeParameters, cfg: GradeConfig = GradeConfig()) -> GradeResult:
    """Locally optimal edge distribution for ``params.pattern``."""
    return grade_pattern(params.gamma, params.kappa, params.pattern, cfg)


def grade_pattern(gamma: int, kappa: int, pattern: CouplingPattern,
                  cfg: GradeConfig = GradeConfig()) -> GradeResult:
    """Locally optimal edge distribution over ``pattern`` for a gamma x kappa base.

    Starts from the uniform distribution and moves along the centred,
    normalised gradient of the combined objective. A step is accepted only if
    the objective does not increase; otherwise it is halved, at most
    ``MAX_HALVINGS`` times. Steps leaving the open simplex are halved and the
    offending entries floored at ``FLOOR`` before renormalising.
    """
    def value(p):
        return objective(gamma, kappa, pattern, p, cfg.w)

    n = len(pattern)
    p = np.full(n, 1.0 / n)
    v = value(p)
    trace = [v]
    converged = False
    it = 0
    while it < cfg.max_iters:
        it += 1
        g = objective_gradient(gamma, kappa, pattern, p, cfg.w)
        g = g - g.mean()
        norm = np.linalg.norm(g)
        if norm <= 1e-15 * max(1.0, abs(v)):
            converged = True
            break
        direction = g / norm
        step = cfg.alpha
        accepted = None
        for _ in range(MAX_HALVINGS + 1):
            q = p - step * direction
            if (q <= 0.0).any():
                step *= 0.5
                q = _project(p - step * direction)
            vq = value(q)
            if vq <= v:
                accepted = (q, vq)
                break
            step *= 0.5
        if accepted is None:
            converged = True
            break
        q, vq = accepted
        trace.append(vq)
        done = abs(v - vq) <= cfg.epsilon
        p, v = q, vq
        if done:
            converged = True
            break
    if not converged:
        log.warning("gradient descent stopped at max_iters=%d without converging", cfg.max_iters)
    p = p / p.sum()
    return GradeResult(EdgeDistribution(tuple(p)), trace, converged, it)


def round_distribution(dist: EdgeDistribution, total: int) -> np.ndarray:
    """Integer counts summing to ``total`` closest (L2) to ``total * p``.

    Floors plus one extra unit for the largest fractional parts. Among tied
    remainders the extra units go to the highest indices, which yields the
    lexicographically smallest optimum.
    """
    if total < 1:
        raise ValidationError(f"total must be >= 1, got {total}")
    target = np.asarray(dist.p, dtype=float) * total
    u = np.floor(target).astype(np.int64)
    frac = target - u
    short = total - int(u.sum())
    # Rounded remainders make exact ties compare equal despite float noise.
    order = sorted(range(len(u)), key=lambda k: (-round(frac[k], 9), -k))
    for k in order[:short]:
        u[k] += 1
    _exchange_check(u, target)
    return u


def _exchange_check(u: np.ndarray, target: np.ndarray) -> None:
    # Moving one unit between coordinates must never reduce the L2 error.
    err = u - target
    n = len(u)
    for i in range(n):
        if u[i] == 0:
            continue
        for j in range(n):
            if i != j and (err[i] - 1) ** 2 + (err[j] + 1) ** 2 < err[i] ** 2 + err[j] ** 2 - 1e-9:
                raise AssertionError(f"rounding not optimal: move {i}->{j} improves {u}")
