"""Greedy coordinate descent over circulant powers for a fixed partition.

This is a stand-in for the published circulant power optimiser: it keeps the
same contract (reduce the cycles that survive lifting, given the partition)
with a simple sweep. Each entry in turn takes the power that minimises the
weighted number of closed lifted walks through it; ties keep the current
power.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .cycles import (CONVENTIONS, NodeCandidateIndex, count_protograph_candidates,
                     count_tanner_cycles, enumerate_candidates, partition_sums)
from .model import CodeParameters, CycleStats, LiftingMatrix, PartitioningMatrix, ValidationError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CpoConfig:
    w: float = 100.0
    seed: int = 0
    max_sweeps: int = 50
    convention: str = "full"

    def __post_init__(self):
        if self.max_sweeps < 1:
            raise ValidationError(f"max_sweeps must be >= 1, got {self.max_sweeps}")
        if self.convention not in CONVENTIONS:
            raise ValidationError(f"convention must be one of {CONVENTIONS}")


def initial_lifting(gamma: int, kappa: int, z: int) -> LiftingMatrix:
    i, j = np.indices((gamma, kappa))
    return LiftingMatrix((i * j) % z, z)


class _LiftState:
    """Lift sums of the partition-surviving candidates and their weights."""

    def __init__(self, params: CodeParameters, P: np.ndarray, Lm: np.ndarray, convention: str):
        self.z = params.circulant_size
        self.parts = []
        for g in (3, 4):
            cands = enumerate_candidates(params.gamma, params.kappa, g)
            alive = cands.subset(partition_sums(cands, P) == 0)
            if len(alive):
                span, _, _ = kernels.walk_profile(P, Lm, alive.rows, alive.cols, self.z)
            else:
                span = np.zeros(0, dtype=np.int64)
            if convention == "full":
                weight = np.maximum(0, params.replicas - span)
            else:
                weight = np.ones(len(span), dtype=np.int64)
            keep = weight > 0
            alive = alive.subset(keep)
            weight = np.ascontiguousarray(weight[keep])
            index = NodeCandidateIndex(alive)
            sums = kernels.signed_sums(Lm, alive.rows, alive.cols)
            self.parts.append((index, sums, weight))

    def local(self, i: int, j: int, current: int, w: float) -> np.ndarray:
        """Weighted closed-walk count through (i, j) for every power."""
        out = np.zeros(self.z, dtype=float)
        for scale, (index, sums, weight) in zip((w, 1.0), self.parts):
            idx, coef = index.members(i, j)
            if idx.size == 0:
                continue
            rest = sums[idx] - coef * current
            out += scale * kernels.modular_hits(rest, coef, weight[idx], self.z)
        return out

    def apply(self, i: int, j: int, old: int, new: int) -> None:
        for index, sums, _ in self.parts:
            idx, coef = index.members(i, j)
            sums[idx] += coef * (new - old)

    def total(self, w: float) -> float:
        out = 0.0
        for scale, (_, sums, weight) in zip((w, 1.0), self.parts):
            out += scale * weight[(sums % self.z) == 0].sum()
        return out


def cpo_optimize(params: CodeParameters, P, cfg: CpoConfig = CpoConfig(),
                 start: Optional[LiftingMatrix] = None,
                 history: Optional[list] = None) -> tuple[LiftingMatrix, CycleStats]:
    """Lifting matrix for partition ``P`` and the resulting cycle statistics.

    ``history``, if given, receives the weighted objective after every
    accepted move (first element: the starting value).
    """
    P = P.entries if isinstance(P, PartitioningMatrix) else np.asarray(P, dtype=np.int64)
    gamma, kappa, z = params.gamma, params.kappa, params.circulant_size
    if start is None:
        start = initial_lifting(gamma, kappa, z)
    Lm = np.array(start.entries, dtype=np.int64)
    state = _LiftState(params, P, Lm, cfg.convention)
    current = state.total(cfg.w)
    if history is not None:
        history.append(current)
    order = np.random.default_rng(cfg.seed).permutation(gamma * kappa)
    for sweep in range(cfg.max_sweeps):
        changed = False
        for flat in order:
            i, j = divmod(int(flat), kappa)
            old = int(Lm[i, j])
            local = state.local(i, j, old, cfg.w)
            best = int(np.argmin(local))
            if local[best] < local[old]:
                state.apply(i, j, old, best)
                Lm[i, j] = best
                current += local[best] - local[old]
                changed = True
                if history is not None:
                    history.append(current)
        if not changed:
            break
    else:
        log.info("circulant power search hit max_sweeps=%d", cfg.max_sweeps)
    lifting = LiftingMatrix(Lm, z)
    return lifting, code_stats(params, P, lifting, cfg.w, cfg.convention)


def code_stats(params: CodeParameters, P, lifting, w: float, convention: str = "full") -> CycleStats:
    P = P.entries if isinstance(P, PartitioningMatrix) else np.asarray(P, dtype=np.int64)
    L = lifting.entries if isinstance(lifting, LiftingMatrix) else np.asarray(lifting, dtype=np.int64)
    c6, c8 = count_protograph_candidates(P)
    t6, t8 = count_tanner_cycles(P, L, params.circulant_size, params.replicas, convention)
    return CycleStats.build(c6, c8, t6, t8, w)
