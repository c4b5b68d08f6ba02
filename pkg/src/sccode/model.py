"""Core value types for spatially-coupled code construction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

DIST_TOL = 1e-12
MAX_BASE_DIM = 64


class ValidationError(ValueError):
    """Raised when a value violates one of its type invariants."""


def _frozen_int_matrix(entries) -> np.ndarray:
    arr = np.array(entries, dtype=np.int64, copy=True)
    if arr.ndim != 2:
        raise ValidationError(f"matrix must be 2-D, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class CouplingPattern:
    """Sorted indices of the nonzero component matrices, starting at 0."""

    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if len(self.a) == 0:
            raise ValidationError("pattern: must contain at least one entry")
        if self.a[0] != 0:
            raise ValidationError(f"pattern: a_0 must be 0, got a_0={self.a[0]}")
        for k in range(1, len(self.a)):
            if self.a[k] <= self.a[k - 1]:
                raise ValidationError(
                    f"pattern: entries must be strictly increasing, "
                    f"a_{k - 1}={self.a[k - 1]} >= a_{k}={self.a[k]}"
                )

    @classmethod
    def full(cls, memory: int) -> "CouplingPattern":
        return cls(tuple(range(memory + 1)))

    @classmethod
    def parse(cls, text: str) -> "CouplingPattern":
        try:
            values = [int(tok) for tok in text.split(",") if tok.strip()]
        except ValueError as exc:
            raise ValidationError(f"pattern: cannot parse {text!r} as integers") from exc
        return cls(tuple(values))

    @property
    def memory(self) -> int:
        return self.a[-1]

    @property
    def pseudo_memory(self) -> int:
        return len(self.a) - 1

    def __len__(self) -> int:
        return len(self.a)

    def __iter__(self):
        return iter(self.a)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.a)


@dataclass(frozen=True)
class EdgeDistribution:
    """Probability of each support value of a coupling pattern."""

    p: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(float(x) for x in self.p))
        if len(self.p) == 0:
            raise ValidationError("distribution: empty")
        for k, x in enumerate(self.p):
            if not (0.0 < x <= 1.0):
                raise ValidationError(f"distribution: p_{k}={x} is outside (0, 1]")
        total = sum(self.p)
        if abs(total - 1.0) > DIST_TOL:
            raise ValidationError(f"distribution: entries sum to {total!r}, not 1")

    @classmethod
    def uniform(cls, size: int) -> "EdgeDistribution":
        return cls((1.0 / size,) * size)

    def as_array(self) -> np.ndarray:
        return np.array(self.p, dtype=float)

    def __len__(self) -> int:
        return len(self.p)


@dataclass(frozen=True)
class CodeParameters:
    gamma: int
    kappa: int
    memory: int
    pattern: CouplingPattern
    circulant_size: int
    replicas: int

    def __post_init__(self):
        errors = validate(self)
        if errors:
            raise ValidationError("; ".join(errors))

    @classmethod
    def create(cls, gamma, kappa, memory, circulant_size, replicas, pattern=None):
        if pattern is None:
            pattern = CouplingPattern.full(memory)
        elif not isinstance(pattern, CouplingPattern):
            pattern = CouplingPattern(tuple(pattern))
        return cls(gamma, kappa, memory, pattern, circulant_size, replicas)

    @property
    def pseudo_memory(self) -> int:
        return self.pattern.pseudo_memory

    @property
    def edges(self) -> int:
        return self.gamma * self.kappa

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "kappa": self.kappa,
            "memory": self.memory,
            "pattern": list(self.pattern.a),
            "circulant_size": self.circulant_size,
            "replicas": self.replicas,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CodeParameters":
        return cls(
            d["gamma"], d["kappa"], d["memory"], CouplingPattern(tuple(d["pattern"])),
            d["circulant_size"], d["replicas"],
        )


def validate(params: CodeParameters) -> list[str]:
    """Return a list of invariant violations; an empty list means valid."""
    errors = []
    for name, lo in (("gamma", 2), ("kappa", 2)):
        v = getattr(params, name)
        if not isinstance(v, (int, np.integer)) or v < lo:
            errors.append(f"{name}: must be an integer >= {lo}, got {v!r}")
        elif v > MAX_BASE_DIM:
            errors.append(f"{name}: must be <= {MAX_BASE_DIM}, got {v}")
    if params.memory < 0:
        errors.append(f"memory: must be >= 0, got {params.memory}")
    if not isinstance(params.pattern, CouplingPattern):
        errors.append("pattern: must be a CouplingPattern")
    else:
        if params.pattern.memory != params.memory:
            errors.append(
                f"pattern: last entry {params.pattern.memory} must equal memory {params.memory}"
            )
    if params.circulant_size < 2:
        errors.append(f"circulant_size: must be >= 2, got {params.circulant_size}")
    if params.replicas < 1:
        errors.append(f"replicas: must be >= 1, got {params.replicas}")
    return errors


@dataclass(frozen=True, eq=False)
class PartitioningMatrix:
    """gamma x kappa matrix of component indices, each in the pattern support."""

    entries: np.ndarray
    pattern: CouplingPattern

    def __post_init__(self):
        arr = _frozen_int_matrix(self.entries)
        object.__setattr__(self, "entries", arr)
        bad = ~np.isin(arr, np.array(self.pattern.a))
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise ValidationError(
                f"partition: entry ({i},{j})={arr[i, j]} not in support {{{self.pattern}}}"
            )

    @classmethod
    def zeros(cls, gamma: int, kappa: int, pattern: CouplingPattern) -> "PartitioningMatrix":
        return cls(np.zeros((gamma, kappa), dtype=np.int64), pattern)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def histogram(self) -> np.ndarray:
        """Count of entries per support value, in pattern order."""
        return np.array([(self.entries == v).sum() for v in self.pattern.a], dtype=np.int64)

    def __eq__(self, other):
        if not isinstance(other, PartitioningMatrix):
            return NotImplemented
        return self.pattern == other.pattern and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.pattern, self.entries.tobytes(), self.entries.shape))


@dataclass(frozen=True, eq=False)
class LiftingMatrix:
    """gamma x kappa matrix of circulant powers in [0, z)."""

    entries: np.ndarray
    circulant_size: int

    def __post_init__(self):
        arr = _frozen_int_matrix(self.entries)
        object.__setattr__(self, "entries", arr)
        bad = (arr < 0) | (arr >= self.circulant_size)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise ValidationError(
                f"lifting: entry ({i},{j})={arr[i, j]} outside [0, {self.circulant_size})"
            )

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __eq__(self, other):
        if not isinstance(other, LiftingMatrix):
            return NotImplemented
        return self.circulant_size == other.circulant_size and np.array_equal(
            self.entries, other.entries
        )

    def __hash__(self):
        return hash((self.circulant_size, self.entries.tobytes(), self.entries.shape))


@dataclass(frozen=True)
class CycleStats:
    """Cycle statistics of one code.

    Tanner-level counts are ``None`` until a lifting matrix exists.
    ``weighted_objective`` is ``w * cycles6 + cycles8`` at the deepest level
    available (Tanner graph if known, otherwise protograph).
    """

    protograph_candidates_6: int
    protograph_candidates_8: int
    tanner_cycles_6: Optional[int] = None
    tanner_cycles_8: Optional[int] = None
    weighted_objective: float = 0.0

    @classmethod
    def build(cls, proto6, proto8, tanner6=None, tanner8=None, w=1.0) -> "CycleStats":
        if tanner6 is None:
            obj = w * proto6 + proto8
        else:
            obj = w * tanner6 + tanner8
        return cls(int(proto6), int(proto8),
                   None if tanner6 is None else int(tanner6),
                   None if tanner8 is None else int(tanner8),
                   float(obj))

    def to_dict(self) -> dict:
        return {
            "protograph_candidates_6": self.protograph_candidates_6,
            "protograph_candidates_8": self.protograph_candidates_8,
            "tanner_cycles_6": self.tanner_cycles_6,
            "tanner_cycles_8": self.tanner_cycles_8,
            "weighted_objective": self.weighted_objective,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CycleStats":
        return cls(**{k: d[k] for k in (
            "protograph_candidates_6", "protograph_candidates_8",
            "tanner_cycles_6", "tanner_cycles_8", "weighted_objective")})


@dataclass(frozen=True)
class ConstructionResult:
    params: CodeParameters
    partition: PartitioningMatrix
    lifting: LiftingMatrix
    stats: CycleStats
    seed: int
    distribution: Optional[EdgeDistribution] = None
    extra: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "partition": self.partition.entries.tolist(),
            "lifting": self.lifting.entries.tolist(),
            "stats": self.stats.to_dict(),
            "seed": self.seed,
            "distribution": None if self.distribution is None else list(self.distribution.p),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ConstructionResult":
        params = CodeParameters.from_dict(d["params"])
        dist = d.get("distribution")
        return cls(
            params,
            PartitioningMatrix(np.array(d["partition"]), params.pattern),
            LiftingMatrix(np.array(d["lifting"]), params.circulant_size),
            CycleStats.from_dict(d["stats"]),
            int(d["seed"]),
            None if dist is None else EdgeDistribution(tuple(dist)),
        )


def check_distribution(pattern: CouplingPattern, dist: EdgeDistribution) -> None:
    if len(pattern) != len(dist):
        raise ValidationError(
            f"distribution has {len(dist)} entries but pattern has {len(pattern)} support points"
        )

