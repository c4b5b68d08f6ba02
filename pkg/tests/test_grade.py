import itertools
import logging

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sccode.grade import GradeConfig, grade, grade_pattern, round_distribution
from sccode.metrics import objective
from sccode.model import CodeParameters, CouplingPattern, EdgeDistribution, ValidationError


def p6_grid(step=1e-3):
    """Minimiser of P6 for a=(0,1,2) on a simplex grid, from the hand-expanded cube of f."""
    s = np.arange(0, 1 + step / 2, step)
    p0, p1 = np.meshgrid(s, s, indexing="ij")
    p2 = 1 - p0 - p1
    c = [p0**3, 3 * p0**2 * p1, 3 * p0**2 * p2 + 3 * p0 * p1**2, p1**3 + 6 * p0 * p1 * p2,
         3 * p1**2 * p2 + 3 * p0 * p2**2, 3 * p1 * p2**2, p2**3]
    v = sum(x**2 for x in c)
    v[p2 < -1e-12] = np.inf
    i, j = np.unravel_index(np.argmin(v), v.shape)
    return np.array([s[i], s[j], 1 - s[i] - s[j]])


def test_matches_grid_minimum_when_six_cycles_dominate():
    res = grade_pattern(10, 10, CouplingPattern.full(2), GradeConfig(w=1e6))
    assert res.converged
    assert np.max(np.abs(np.array(res.dist.p) - p6_grid())) < 5e-3


def test_full_memory_four_is_skewed_to_the_ends():
    p = np.array(grade_pattern(4, 29, CouplingPattern.full(4), GradeConfig(w=1e6)).dist.p)
    assert set(np.argsort(p)[-2:]) == {0, 4}


def test_single_component():
    res = grade_pattern(3, 7, CouplingPattern((0,)))
    assert res.dist.p == (1.0,) and res.converged


def test_trace_descends_and_stays_on_simplex():
    params = CodeParameters.create(3, 17, 9, 7, 100)
    res = grade(params, GradeConfig(alpha=0.05))
    assert all(b <= a for a, b in zip(res.trace, res.trace[1:]))
    assert abs(sum(res.dist.p) - 1) < 1e-12
    assert np.isclose(res.value, objective(3, 17, params.pattern, res.dist, 100))
    p = np.array(res.dist.p)
    assert np.allclose(p, p[::-1], atol=1e-6)


def test_iteration_cap_warns(caplog):
    with caplog.at_level(logging.WARNING):
        res = grade_pattern(3, 7, CouplingPattern.full(5), GradeConfig(max_iters=2))
    assert not res.converged and res.iterations == 2
    assert "max_iters" in caplog.text


def test_large_step_hits_boundary_safely():
    res = grade_pattern(3, 7, CouplingPattern.full(3), GradeConfig(alpha=2.0))
    assert all(x > 0 for x in res.dist.p)


@pytest.mark.parametrize("kw", [dict(epsilon=0), dict(alpha=-1), dict(max_iters=0), dict(w=-1)])
def test_config_invariants(kw):
    with pytest.raises(ValidationError):
        GradeConfig(**kw)


def _best_composition(p, total):
    """Exhaustive oracle: L2-closest composition, lexicographically smallest on ties."""
    best, best_err = None, np.inf
    n = len(p)
    for cut in itertools.combinations(range(total + n - 1), n - 1):
        u = np.diff([-1, *cut, total + n - 1]) - 1
        err = np.sum((u / total - p) ** 2)
        if err < best_err - 1e-12:
            best, best_err = u, err
    return best


@pytest.mark.parametrize("p, total, want", [
    ((1 / 3,) * 3, 21, (7, 7, 7)), ((0.4, 0.2, 0.4), 21, (8, 4, 9)), ((1.0,), 13, (13,)),
])
def test_rounding_examples(p, total, want):
    assert tuple(round_distribution(EdgeDistribution(p), total)) == want


def test_rounding_against_exhaustive_oracle(rng):
    for _ in range(40):
        n = int(rng.integers(1, 5))
        total = int(rng.integers(1, 41))
        p = rng.random(n) + 0.01
        p /= p.sum()
        p[-1] = 1 - p[:-1].sum()
        u = round_distribution(EdgeDistribution(tuple(p)), total)
        assert np.array_equal(u, _best_composition(p, total))
        assert np.all(np.abs(u - total * p) < 1)


@given(st.lists(st.integers(1, 9), min_size=1, max_size=6), st.integers(1, 200))
def test_rounding_sums(weights, total):
    p = np.array(weights, float) / sum(weights)
    u = round_distribution(EdgeDistribution(tuple(p)), total)
    assert u.sum() == total and (u >= 0).all()
