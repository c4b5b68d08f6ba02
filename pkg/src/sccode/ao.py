"""Semi-greedy search over partitioning matrices near a target edge distribution,
and the end-to-end construction pipelines built on it."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import ceil
from typing import Optional

import numpy as np

from . import kernels
from .cpo import CpoConfig, cpo_optimize
from .cycles import enumerate_candidates, node_index, partition_sums
from .grade import GradeConfig, grade, round_distribution
from .model import (CodeParameters, ConstructionResult, CouplingPattern, CycleStats,
                    EdgeDistribution, PartitioningMatrix, ValidationError, check_distribution)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AoConfig:
    d1: int
    d2: int
    w: float = 100.0
    seed: int = 0
    max_sweeps: int = 1000

    def __post_init__(self):
        if not (self.d1 >= self.d2 >= 0):
            raise ValidationError(f"need d1 >= d2 >= 0, got d1={self.d1}, d2={self.d2}")
        if self.max_sweeps < 1:
            raise ValidationError(f"max_sweeps must be >= 1, got {self.max_sweeps}")

    @classmethod
    def for_size(cls, gamma: int, kappa: int, **kw) -> "AoConfig":
        n = gamma * kappa
        kw.setdefault("d1", ceil(n / 4))
        kw.setdefault("d2", ceil(n / 8))
        return cls(**kw)


def initialize_partition(u, pattern: CouplingPattern, gamma: int, kappa: int,
                         seed: int) -> PartitioningMatrix:
    """Random matrix holding exactly ``u[k]`` copies of ``pattern.a[k]``."""
    u = np.asarray(u, dtype=np.int64)
    if len(u) != len(pattern):
        raise ValidationError(f"u has {len(u)} entries, pattern has {len(pattern)}")
    if (u < 0).any() or u.sum() != gamma * kappa:
        raise ValidationError(f"u must be nonnegative and sum to {gamma * kappa}, got {u.tolist()}")
    values = np.repeat(np.array(pattern.a, dtype=np.int64), u)
    values = np.random.default_rng(seed).permutation(values)
    return PartitioningMatrix(values.reshape(gamma, kappa), pattern)


class _Survivors:
    """Signed partition sums of every candidate, kept current under single-entry edits."""

    def __init__(self, gamma: int, kappa: int, P: np.ndarray):
        self.parts = []
        for g in (3, 4):
            cands = enumerate_candidates(gamma, kappa, g)
            index = node_index(gamma, kappa, g)
            sums = np.array(partition_sums(cands, P), dtype=np.int64)
            self.parts.append((index, sums))

    def local(self, i, j, current, values) -> tuple[np.ndarray, np.ndarray]:
        out = []
        for index, sums in self.parts:
            idx, coef = index.members(i, j)
            rest = sums[idx] - coef * current
            out.append(kernels.value_hits(rest, coef, np.ones(len(idx), dtype=np.int64), values))
        return out[0], out[1]

    def apply(self, i, j, old, new) -> None:
        for index, sums in self.parts:
            idx, coef = index.members(i, j)
            sums[idx] += coef * (new - old)

    def counts(self) -> tuple[int, int]:
        return tuple(int(np.count_nonzero(s == 0)) for _, s in self.parts)


def ao_optimize(params: CodeParameters, dist: EdgeDistribution, cfg: AoConfig,
                start: Optional[PartitioningMatrix] = None,
                history: Optional[list] = None,
                check: bool = False) -> tuple[PartitioningMatrix, CycleStats]:
    """Locally optimal partition near a random one drawn from ``dist``.

    Visits every entry and tries each other support value, accepting a value
    when it strictly lowers ``w * #6-candidates + #8-candidates`` through that
    entry and the reassignment budget allows it. The budget counts accepted
    moves *to* each support value over the whole run: at most ``d1`` in total
    and ``d2`` per value. Sweeps repeat until one changes nothing.
    """
    pattern = params.pattern
    check_distribution(pattern, dist)
    gamma, kappa = params.gamma, params.kappa
    if start is None:
        u = round_distribution(dist, gamma * kappa)
        start = initialize_partition(u, pattern, gamma, kappa, cfg.seed)
    P = np.array(start.entries, dtype=np.int64)
    support = np.array(pattern.a, dtype=np.int64)
    pos = {int(v): k for k, v in enumerate(support)}
    state = _Survivors(gamma, kappa, P)
    c6, c8 = state.counts()
    total = cfg.w * c6 + c8
    if history is not None:
        history.append(total)
    d = np.zeros(len(support), dtype=np.int64)
    for sweep in range(cfg.max_sweeps):
        changed = False
        for i in range(gamma):
            for j in range(kappa):
                old = int(P[i, j])
                h6, h8 = state.local(i, j, old, support)
                t = cfg.w * h6 + h8
                cur = old
                n = t[pos[old]]
                for k, v in enumerate(support):
                    if v == cur:
                        continue
                    d_try = d.copy()
                    d_try[k] += 1
                    if d_try.sum() > cfg.d1 or d_try.max() > cfg.d2:
                        continue
                    if t[k] < n:
                        total += t[k] - n
                        n, cur, d = t[k], int(v), d_try
                        changed = True
                        if history is not None:
                            history.append(total)
                if cur != old:
                    state.apply(i, j, old, cur)
                    P[i, j] = cur
        if check:
            fresh = _Survivors(gamma, kappa, P).counts()
            if fresh != state.counts():
                raise AssertionError(f"incremental counts {state.counts()} != recomputed {fresh}")
        if not changed:
            break
    else:
        log.info("partition search hit max_sweeps=%d", cfg.max_sweeps)
    c6, c8 = state.counts()
    return PartitioningMatrix(P, pattern), CycleStats.build(c6, c8, w=cfg.w)


def construct_from_distribution(params: CodeParameters, dist: EdgeDistribution, ao_cfg: AoConfig,
                                cpo_cfg: Optional[CpoConfig] = None) -> ConstructionResult:
    """Partition search from ``dist`` followed by lifting search."""
    if cpo_cfg is None:
        cpo_cfg = CpoConfig(w=ao_cfg.w, seed=ao_cfg.seed)
    partition, _ = ao_optimize(params, dist, ao_cfg)
    lifting, stats = cpo_optimize(params, partition, cpo_cfg)
    return ConstructionResult(params, partition, lifting, stats, ao_cfg.seed, dist)


def construct_gd_code(params: CodeParameters, grade_cfg: GradeConfig, ao_cfg: AoConfig,
                      cpo_cfg: Optional[CpoConfig] = None) -> ConstructionResult:
    """Gradient-descent distribution, then partition and lifting search."""
    dist = grade(params, grade_cfg).dist
    return construct_from_distribution(params, dist, ao_cfg, cpo_cfg)


def construct_unf_code(params: CodeParameters, ao_cfg: AoConfig,
                       cpo_cfg: Optional[CpoConfig] = None) -> ConstructionResult:
    """Same pipeline as ``construct_gd_code`` from the uniform distribution."""
    dist = EdgeDistribution.uniform(len(params.pattern))
    return construct_from_distribution(params, dist, ao_cfg, cpo_cfg)
