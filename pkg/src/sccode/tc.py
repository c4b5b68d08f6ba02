"""Sparse coupling patterns: exhaustive pattern search and the matching pipeline."""

from __future__ import annotations

import itertools
import logging
from dataclasses import replace
from math import comb
from typing import Optional

from .ao import AoConfig, construct_gd_code
from .cpo import CpoConfig
from .grade import GradeConfig, grade_pattern
from .model import CodeParameters, ConstructionResult, CouplingPattern, ValidationError

log = logging.getLogger(__name__)

MAX_PATTERNS = 10**6
REL_TIE = 1e-9


def candidate_patterns(m: int, m_t: int):
    """Every pattern of length ``m_t + 1`` starting at 0 and ending at ``m``."""
    if not (1 <= m_t <= m):
        raise ValidationError(f"need 1 <= pseudo-memory <= memory, got m_t={m_t}, m={m}")
    n = comb(m - 1, m_t - 1)
    if n > MAX_PATTERNS:
        raise ValidationError(f"{n} candidate patterns exceeds the limit of {MAX_PATTERNS}")
    for inner in itertools.combinations(range(1, m), m_t - 1):
        yield CouplingPattern((0,) + inner + (m,))


def search_pattern(m: int, m_t: int, gamma: int, kappa: int, w: float = 100.0,
                   cfg: Optional[GradeConfig] = None) -> CouplingPattern:
    """Pattern whose optimised distribution has the lowest combined objective.

    Values within a relative ``REL_TIE`` of the minimum count as ties, broken
    by the lexicographically smallest pattern.
    """
    cfg = GradeConfig(w=w) if cfg is None else replace(cfg, w=w)
    scored = [(grade_pattern(gamma, kappa, a, cfg).value, a) for a in candidate_patterns(m, m_t)]
    best = min(v for v, _ in scored)
    tied = [a for v, a in scored if v <= best + REL_TIE * abs(best)]
    choice = min(tied, key=lambda a: a.a)
    log.info("pattern search (m=%d, m_t=%d): %s with objective %.6g", m, m_t, choice.a, best)
    return choice


def construct_tc_code(params: CodeParameters, grade_cfg: GradeConfig, ao_cfg: AoConfig,
                      cpo_cfg: Optional[CpoConfig] = None) -> ConstructionResult:
    """Distribution, partition and lifting search restricted to ``params.pattern``.

    Identical to the gradient-descent pipeline; the sparsity lives entirely in
    the pattern, which is normally chosen by ``search_pattern``.
    """
    return construct_gd_code(params, grade_cfg, ao_cfg, cpo_cfg)
