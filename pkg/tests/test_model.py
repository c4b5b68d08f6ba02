import numpy as np
import pytest
from hypothesis import given, strategies as st

from sccode.model import (CodeParameters, ConstructionResult, CouplingPattern, CycleStats,
                          EdgeDistribution, LiftingMatrix, PartitioningMatrix, ValidationError,
                          validate)


def test_published_parameter_sets_validate():
    assert validate(CodeParameters.create(3, 7, 5, 13, 100)) == []
    assert validate(CodeParameters.create(4, 17, 4, 17, 50, pattern=(0, 1, 4))) == []
    assert CodeParameters.create(4, 17, 4, 17, 50, pattern=(0, 1, 4)).pseudo_memory == 2


@pytest.mark.parametrize("a, msg", [((1, 2), "a_0"), ((0, 0, 2), "strictly increasing"),
                                    ((0, 3, 2), "strictly increasing"), ((), "at least one")])
def test_bad_patterns(a, msg):
    with pytest.raises(ValidationError, match=msg):
        CouplingPattern(a)


def test_pattern_parse_and_memory():
    a = CouplingPattern.parse("0,1,4")
    assert a.a == (0, 1, 4) and a.memory == 4 and a.pseudo_memory == 2
    with pytest.raises(ValidationError):
        CouplingPattern.parse("0,x")


@pytest.mark.parametrize("kw, field", [
    (dict(gamma=1), "gamma"), (dict(kappa=65), "kappa"), (dict(circulant_size=1), "circulant_size"),
    (dict(replicas=0), "replicas"), (dict(memory=3), "pattern"),
])
def test_parameter_violations_name_the_field(kw, field):
    base = dict(gamma=3, kappa=7, memory=2, pattern=CouplingPattern.full(2), circulant_size=5, replicas=4)
    base.update(kw)
    with pytest.raises(ValidationError, match=field):
        CodeParameters(**base)


def test_distribution_invariants():
    EdgeDistribution((0.4, 0.2, 0.4))
    with pytest.raises(ValidationError, match="sum"):
        EdgeDistribution((0.4, 0.2, 0.4 + 1e-9))
    with pytest.raises(ValidationError, match="outside"):
        EdgeDistribution((1.0, 0.0))
    assert np.isclose(sum(EdgeDistribution.uniform(7).p), 1.0, atol=1e-12)


def test_matrix_ranges():
    a = CouplingPattern((0, 1, 4))
    PartitioningMatrix.zeros(3, 4, a)
    with pytest.raises(ValidationError, match=r"\(0,1\)"):
        PartitioningMatrix([[0, 2], [1, 4]], a)
    with pytest.raises(ValidationError, match="outside"):
        LiftingMatrix([[0, 5]], 5)
    m = PartitioningMatrix([[0, 4], [1, 4]], a)
    assert m.histogram().tolist() == [1, 1, 2]
    with pytest.raises(ValueError):
        m.entries[0, 0] = 1


def test_stats_objective_prefers_tanner_counts():
    assert CycleStats.build(3, 10, w=100).weighted_objective == 310
    assert CycleStats.build(3, 10, 0, 7, w=100).weighted_objective == 7


@given(st.integers(2, 6), st.integers(2, 6), st.integers(0, 4), st.integers(2, 9),
       st.integers(1, 5), st.integers(0, 2**31 - 1))
def test_result_round_trip(gamma, kappa, m, z, L, seed):
    rng = np.random.default_rng(seed)
    params = CodeParameters.create(gamma, kappa, m, z, L)
    P = PartitioningMatrix(rng.integers(0, m + 1, (gamma, kappa)), params.pattern)
    Lm = LiftingMatrix(rng.integers(0, z, (gamma, kappa)), z)
    dist = EdgeDistribution.uniform(m + 1) if seed % 2 else None
    stats = CycleStats.build(*rng.integers(0, 100, 4).tolist(), w=float(rng.integers(1, 200)))
    res = ConstructionResult(params, P, Lm, stats, seed, dist)
    back = ConstructionResult.from_dict(res.to_dict())
    assert back == res
