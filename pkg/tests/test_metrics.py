from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import (exact_p6, random_partitions, representative, survival_probability,
                     survivors_batch)
from sccode.cycles import enumerate_candidates
from sccode.metrics import (EXACT_S6_PER_BLOCK, cycle6_count, grad_n8, grad_p6, n8, objective,
                            objective_gradient, p6, p8_structures, structure_weights)
from sccode.model import CouplingPattern, EdgeDistribution, ValidationError

full = CouplingPattern.full


def random_instance(rng, max_m=10):
    m = int(rng.integers(1, max_m + 1))
    inner = sorted(rng.choice(np.arange(1, m), size=rng.integers(0, m), replace=False).tolist()) if m > 1 else []
    a = CouplingPattern((0, *inner, m))
    p = rng.random(len(a)) + 0.05
    return a, p / p.sum()


@pytest.mark.parametrize("a, p, want", [
    (full(2), None, 0.1934), (full(4), None, 0.1121),
    (full(2), (0.4, 0.2, 0.4), 0.1818), (full(4), (0.31, 0.13, 0.12, 0.13, 0.31), 0.0986),
])
def test_p6_published_values(a, p, want):
    dist = EdgeDistribution.uniform(len(a)) if p is None else EdgeDistribution(p)
    assert abs(p6(a, dist) - want) < 5e-5


def test_degenerate_single_component():
    a, d = CouplingPattern((0,)), EdgeDistribution((1.0,))
    assert p6(a, d) == 1.0
    assert p8_structures(a, d) == (1.0,) * 6
    assert grad_p6(a, d).tolist() == [6.0]
    sw = structure_weights(4, 29)
    assert n8(4, 29, a, d) == sw.total == 2436 + 70644 + 263088 + 4979184
    want = 4 + sw.wbar2 * 6 + sw.wbar3 * 7 + sw.wbar4 * 8
    assert np.isclose(grad_n8(4, 29, a, d)[0], want, rtol=1e-13)
    assert np.isclose(objective(4, 29, a, d, 100.0),
                      sw.wbar1(100.0) + 1 + sw.wbar2 + sw.wbar3 + sw.wbar4, rtol=1e-13)


def test_binary_s1_probability():
    assert np.isclose(p8_structures(full(1), EdgeDistribution((0.5, 0.5)))[0], 6 / 16)


@given(st.integers(2, 64), st.integers(2, 64))
def test_reduced_weights_closed_forms(gamma, kappa):
    sw = structure_weights(gamma, kappa)
    G, K = gamma - 2, kappa - 2
    assert np.isclose(sw.wbar2, gamma + kappa - 4)
    assert np.isclose(sw.wbar3, 2 * G * K)
    w4 = 0.5 * (G * (G - 1) + K * (K - 1)) + G * K * (gamma + kappa - 6) + G * (G - 1) * K * (K - 1) / 6
    assert np.isclose(sw.wbar4, w4, rtol=1e-12)
    assert np.isclose(sw.wbar1(3.0), 2 * G * K)
    assert sw.w1 == comb(gamma, 2) * comb(kappa, 2)


def test_dimension_guard():
    with pytest.raises(ValidationError):
        structure_weights(65, 3)
    with pytest.raises(ValidationError):
        objective(3, 7, full(2), EdgeDistribution.uniform(3), -1)


def test_p6_against_enumeration(rng):
    for _ in range(6):
        a, p = random_instance(rng, max_m=4)
        if len(a) > 4:
            continue
        assert np.isclose(p6(a, p), exact_p6(a.a, p), atol=1e-13)


@pytest.mark.parametrize("structure", [1, 2, 3, 4, 5, 6])
def test_structure_probability_matches_a_real_candidate(structure, rng):
    rows, cols = representative(4, 4, structure)
    for a in (full(1), CouplingPattern((0, 2)), full(2)):
        p = rng.random(len(a)) + 0.1
        p /= p.sum()
        assert np.isclose(p8_structures(a, p)[structure - 1],
                          survival_probability(rows, cols, a.a, p), atol=1e-12)


def test_six_cycle_probability_matches_a_real_candidate(rng):
    rows, cols = representative(3, 3, 0)
    p = np.array([0.5, 0.2, 0.3])
    assert np.isclose(p6(full(2), p), survival_probability(rows, cols, (0, 1, 2), p), atol=1e-12)


def _central(fn, p, h=1e-6):
    out = np.empty(len(p))
    for i in range(len(p)):
        e = np.zeros(len(p))
        e[i] = h
        out[i] = (fn(p + e) - fn(p - e)) / (2 * h)
    return out


def test_gradients_match_finite_differences(rng):
    for _ in range(20):
        a, p = random_instance(rng)
        gamma, kappa = int(rng.integers(2, 7)), int(rng.integers(2, 31))
        sw = structure_weights(gamma, kappa)
        num6 = _central(lambda q: p6(a, q), p)
        num8 = _central(lambda q: n8(gamma, kappa, a, q) / sw.w1, p)
        assert np.allclose(grad_p6(a, p), num6, rtol=1e-5, atol=1e-9)
        assert np.allclose(grad_n8(gamma, kappa, a, p), num8, rtol=1e-5, atol=1e-9)
        numo = _central(lambda q: objective(gamma, kappa, a, q, 50.0), p)
        assert np.allclose(objective_gradient(gamma, kappa, a, p, 50.0), numo, rtol=1e-5, atol=1e-9)


def test_symmetries(rng):
    for _ in range(10):
        a, p = random_instance(rng, max_m=6)
        m = a.memory
        ra = CouplingPattern(tuple(m - x for x in reversed(a.a)))
        rp = p[::-1]
        assert np.isclose(p6(a, p), p6(ra, rp), rtol=1e-12)
        assert np.isclose(n8(3, 5, a, p), n8(3, 5, ra, rp), rtol=1e-12)
        assert np.isclose(n8(3, 8, a, p), n8(8, 3, a, p), rtol=1e-12)
        s = p8_structures(a, p)
        assert s[3] == s[4] == s[5] and all(0 < x <= 1 for x in s)
    sym = np.array([0.3, 0.15, 0.1, 0.15, 0.3])
    g = grad_p6(full(4), sym)
    assert np.allclose(g, g[::-1])
    assert np.allclose(grad_n8(5, 5, full(4), sym), grad_n8(5, 5, full(4), sym)[::-1])


def test_objective_normalisation():
    a, d = full(3), EdgeDistribution((0.3, 0.2, 0.2, 0.3))
    sw = structure_weights(4, 11)
    assert abs(objective(4, 11, a, d, 0.0) - n8(4, 11, a, d) / sw.w1) < 1e-10
    combined = (100 * cycle6_count(4, 11) * p6(a, d) + n8(4, 11, a, d)) / sw.w1
    assert np.isclose(objective(4, 11, a, d, 100.0), combined, rtol=1e-12)
    assert objective(4, 11, a, d, 10.0) < objective(4, 11, a, d, 11.0)


def test_exact_weights_match_enumeration_when_requested():
    d = EdgeDistribution((1.0,))
    total = len(enumerate_candidates(5, 6, 4))
    assert n8(5, 6, CouplingPattern((0,)), d, s6_per_block=EXACT_S6_PER_BLOCK) == total


def test_n8_monte_carlo(rng):
    a, p = (0, 1, 2), np.full(3, 1 / 3)
    cands = enumerate_candidates(3, 7, 4)
    counts = np.concatenate([survivors_batch(cands, random_partitions(rng, a, p, (3, 7), 2000))
                             for _ in range(5)])
    se = counts.std(ddof=1) / np.sqrt(len(counts))
    assert abs(counts.mean() - n8(3, 7, full(2), p)) < 3 * se
