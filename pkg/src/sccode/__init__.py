"""Construction and cycle analysis of quasi-cyclic spatially-coupled LDPC codes."""

__version__ = "0.1.0"

from .model import (CodeParameters, ConstructionResult, CouplingPattern, CycleStats,
                    EdgeDistribution, LiftingMatrix, PartitioningMatrix, ValidationError)
from .metrics import n8, objective, objective_gradient, p6, p8_structures, structure_weights
from .grade import GradeConfig, GradeResult, grade, grade_pattern, round_distribution
from .cycles import (brute_force_tanner_count, count_protograph_candidates, count_tanner_cycles,
                     enumerate_candidates)
from .cpo import CpoConfig, cpo_optimize
from .ao import (AoConfig, ao_optimize, construct_from_distribution, construct_gd_code,
                 construct_unf_code, initialize_partition)
from .tc import construct_tc_code, search_pattern

__all__ = [
    "AoConfig", "CodeParameters", "ConstructionResult", "CouplingPattern", "CpoConfig",
    "CycleStats", "EdgeDistribution", "GradeConfig", "GradeResult", "LiftingMatrix",
    "PartitioningMatrix", "ValidationError", "ao_optimize", "brute_force_tanner_count",
    "construct_from_distribution", "construct_gd_code", "construct_tc_code",
    "construct_unf_code", "count_protograph_candidates", "count_tanner_cycles",
    "cpo_optimize", "enumerate_candidates", "grade", "grade_pattern", "initialize_partition",
    "n8", "objective", "objective_gradient", "p6", "p8_structures", "round_distribution",
    "search_pattern", "structure_weights",
]
