import numpy as np
import pytest

from conftest import fixture_pair
from sccode import _kernels_py
from sccode.cpo import CpoConfig, code_stats, cpo_optimize, initial_lifting
from sccode.cycles import enumerate_candidates, partition_sums
from sccode.model import CodeParameters, LiftingMatrix, ValidationError


def closed_walk_cost(params, P, L, w):
    """Weighted closed lifted walks, recomputed from scratch."""
    total = 0
    for g, scale in ((3, w), (4, 1)):
        c = enumerate_candidates(params.gamma, params.kappa, g)
        alive = c.subset(partition_sums(c, P) == 0)
        span, closed, _ = _kernels_py.walk_profile(P, L, alive.rows, alive.cols, params.circulant_size)
        total += scale * np.sum(np.maximum(0, params.replicas - span)[closed.astype(bool)])
    return total


def test_initial_lifting():
    assert initial_lifting(3, 4, 5).entries.tolist() == [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 4, 1]]


def test_removes_six_cycles_of_small_block_code():
    params = CodeParameters.create(3, 4, 0, 5, 3)
    L, stats = cpo_optimize(params, np.zeros((3, 4), int))
    assert stats.tanner_cycles_6 == 0
    assert ((0 <= L.entries) & (L.entries < 5)).all()


def test_two_by_two_has_no_six_cycles(rng):
    params = CodeParameters.create(2, 2, 0, 3, 1)
    _, stats = cpo_optimize(params, np.zeros((2, 2), int), start=LiftingMatrix(rng.integers(0, 3, (2, 2)), 3))
    assert stats.tanner_cycles_6 == 0


def test_descent_and_local_optimality(rng):
    params = CodeParameters.create(3, 5, 2, 7, 4)
    P = rng.integers(0, 3, (3, 5))
    history = []
    L, stats = cpo_optimize(params, P, CpoConfig(w=20, seed=3), history=history)
    assert all(b < a for a, b in zip(history, history[1:]))
    best = closed_walk_cost(params, P, L.entries, 20)
    assert best == history[-1]
    for i in range(3):
        for j in range(5):
            for s in range(7):
                M = L.entries.copy()
                M[i, j] = s
                assert closed_walk_cost(params, P, M, 20) >= best
    assert stats == code_stats(params, P, L, 20)


def test_determinism(rng):
    params = CodeParameters.create(3, 6, 3, 11, 5)
    P = rng.integers(0, 4, (3, 6))
    assert cpo_optimize(params, P, CpoConfig(seed=5)) == cpo_optimize(params, P, CpoConfig(seed=5))


def test_config_invariants():
    with pytest.raises(ValidationError):
        CpoConfig(max_sweeps=0)
    with pytest.raises(ValidationError):
        CpoConfig(convention="half")


@pytest.mark.slow
def test_published_lifting_is_not_made_worse():
    P, L = fixture_pair("gd")
    params = CodeParameters.create(4, 29, 19, 29, 20)
    before = code_stats(params, P, L, 100)
    _, after = cpo_optimize(params, P, CpoConfig(), start=LiftingMatrix(L, 29))
    assert after.weighted_objective <= before.weighted_objective
