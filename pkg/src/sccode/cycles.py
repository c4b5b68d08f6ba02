"""Cycle candidates of an all-ones base matrix and their survival counts.

A candidate of half-length ``g`` is a closed non-backtracking walk
``(j1, i1, j2, i2, ..., jg, ig)`` in the complete bipartite graph of the
``gamma x kappa`` base matrix. It visits the entries ``(i_k, j_k)`` and
``(i_k, j_{k+1})``. Walks are identified up to rotation (by whole column/row
pairs) and reversal; the stored representative is the lexicographically
smallest.

Survival after partitioning requires the partition entries along the walk to
cancel; survival after lifting additionally requires the circulant powers to
cancel modulo ``z``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from . import kernels
from .model import CodeParameters, LiftingMatrix, PartitioningMatrix, ValidationError

MAX_EDGES = 100_000

# Structure label by (distinct rows, distinct columns) for eight-cycle candidates.
STRUCTURE_8 = {(2, 2): 1, (2, 3): 2, (3, 2): 2, (3, 3): 3,
               (2, 4): 4, (4, 2): 4, (3, 4): 5, (4, 3): 5, (4, 4): 6}
STRUCTURE_6 = 0

CONVENTIONS = ("full", "period")


def _symmetric_images(seq):
    js, is_ = seq[0::2], seq[1::2]
    g = len(js)
    for r in range(g):
        jj = js[r:] + js[:r]
        ii = is_[r:] + is_[:r]
        yield tuple(x for pair in zip(jj, ii) for x in pair)
        rj = (jj[0],) + tuple(reversed(jj[1:]))
        yield tuple(x for pair in zip(rj, tuple(reversed(ii))) for x in pair)


def canonical_form(seq) -> tuple[int, ...]:
    """Smallest rotation/reversal of an interleaved (j, i, j, i, ...) walk."""
    return min(_symmetric_images(tuple(int(x) for x in seq)))


def symmetry_order(seq) -> int:
    """Number of rotations/reversals mapping the walk onto itself."""
    seq = tuple(int(x) for x in seq)
    return sum(img == seq for img in _symmetric_images(seq))


def is_non_backtracking(seq) -> bool:
    js, is_ = seq[0::2], seq[1::2]
    g = len(js)
    return all(js[k] != js[(k + 1) % g] and is_[k] != is_[(k + 1) % g] for k in range(g))


@dataclass(frozen=True)
class CycleCandidate:
    nodes: tuple[int, ...]
    structure: int

    @property
    def g(self) -> int:
        return len(self.nodes) // 2

    @property
    def cols(self) -> tuple[int, ...]:
        return self.nodes[0::2]

    @property
    def rows(self) -> tuple[int, ...]:
        return self.nodes[1::2]

    def entries(self):
        """Yield ``((i_k, j_k), (i_k, j_{k+1}))`` for each step of the walk."""
        js, is_ = self.cols, self.rows
        g = self.g
        for k in range(g):
            yield (is_[k], js[k]), (is_[k], js[(k + 1) % g])


@lru_cache(maxsize=None)
def _templates(g: int, nr: int, nc: int) -> np.ndarray:
    # All canonical walks using every one of rows 0..nr-1 and columns 0..nc-1.
    found = set()
    for js in itertools.product(range(nc), repeat=g):
        if len(set(js)) != nc or any(js[k] == js[(k + 1) % g] for k in range(g)):
            continue
        for is_ in itertools.product(range(nr), repeat=g):
            if len(set(is_)) != nr or any(is_[k] == is_[(k + 1) % g] for k in range(g)):
                continue
            found.add(canonical_form(tuple(x for p in zip(js, is_) for x in p)))
    out = np.array(sorted(found), dtype=np.int16).reshape(-1, 2 * g)
    out.setflags(write=False)
    return out


def template_counts(g: int) -> dict[tuple[int, int], int]:
    """Number of candidates per fully-used ``nr x nc`` block."""
    return {(nr, nc): len(_templates(g, nr, nc))
            for nr in range(2, g + 1) for nc in range(2, g + 1)
            if len(_templates(g, nr, nc))}


@dataclass(frozen=True, eq=False)
class CandidateSet:
    """All candidates of one half-length, stored column-major as arrays."""

    gamma: int
    kappa: int
    g: int
    rows: np.ndarray       # (n, g) int16
    cols: np.ndarray       # (n, g) int16
    structure: np.ndarray  # (n,) int8
    symmetry: np.ndarray   # (n,) int8, order of the walk's stabiliser

    def __len__(self) -> int:
        return self.rows.shape[0]

    def __getitem__(self, k: int) -> CycleCandidate:
        nodes = tuple(int(x) for p in zip(self.cols[k], self.rows[k]) for x in p)
        return CycleCandidate(nodes, int(self.structure[k]))

    def __iter__(self):
        return (self[k] for k in range(len(self)))

    def structure_counts(self) -> dict[int, int]:
        labels, counts = np.unique(self.structure, return_counts=True)
        return {int(a): int(b) for a, b in zip(labels, counts)}

    def plus_nodes(self) -> np.ndarray:
        return self.rows.astype(np.int64) * self.kappa + self.cols

    def minus_nodes(self) -> np.ndarray:
        return self.rows.astype(np.int64) * self.kappa + np.roll(self.cols, -1, axis=1)

    def subset(self, mask) -> "CandidateSet":
        return CandidateSet(self.gamma, self.kappa, self.g,
                            np.ascontiguousarray(self.rows[mask]),
                            np.ascontiguousarray(self.cols[mask]),
                            self.structure[mask], self.symmetry[mask])


def _instantiate(gamma, kappa, nr, nc, tmpl):
    rsel = np.array(list(itertools.combinations(range(gamma), nr)), dtype=np.int16)
    csel = np.array(list(itertools.combinations(range(kappa), nc)), dtype=np.int16)
    g = tmpl.shape[1] // 2
    # Index maps are increasing, so canonical templates stay canonical.
    rows = rsel[:, tmpl[:, 1::2].astype(np.intp)]  # (R, t, g)
    cols = csel[:, tmpl[:, 0::2].astype(np.intp)]  # (C, t, g)
    shape = (len(rsel), len(csel)) + rows.shape[1:]
    rows = np.broadcast_to(rows[:, None], shape)
    cols = np.broadcast_to(cols[None, :], shape)
    return rows.reshape(-1, g), cols.reshape(-1, g)


@lru_cache(maxsize=8)
def enumerate_candidates(gamma: int, kappa: int, g: int) -> CandidateSet:
    """Every distinct cycle candidate of half-length ``g`` in the base matrix."""
    if g not in (3, 4):
        raise ValidationError(f"g must be 3 or 4, got {g}")
    if gamma < 2 or kappa < 2:
        raise ValidationError(f"gamma and kappa must be >= 2, got ({gamma}, {kappa})")
    rows, cols, labels, sym = [], [], [], []
    for (nr, nc), _ in sorted(template_counts(g).items()):
        if nr > gamma or nc > kappa:
            continue
        tmpl = _templates(g, nr, nc)
        r, c = _instantiate(gamma, kappa, nr, nc, tmpl)
        rows.append(r)
        cols.append(c)
        label = STRUCTURE_6 if g == 3 else STRUCTURE_8[(nr, nc)]
        labels.append(np.full(len(r), label, dtype=np.int8))
        order = np.array([symmetry_order(t) for t in tmpl], dtype=np.int8)
        sym.append(np.tile(order, len(r) // len(tmpl)))
    if rows:
        rows = np.ascontiguousarray(np.concatenate(rows), dtype=np.int16)
        cols = np.ascontiguousarray(np.concatenate(cols), dtype=np.int16)
        labels = np.concatenate(labels)
        sym = np.concatenate(sym)
    else:
        rows = np.zeros((0, g), dtype=np.int16)
        cols = np.zeros((0, g), dtype=np.int16)
        labels = np.zeros(0, dtype=np.int8)
        sym = np.zeros(0, dtype=np.int8)
    for arr in (rows, cols, labels, sym):
        arr.setflags(write=False)
    return CandidateSet(gamma, kappa, g, rows, cols, labels, sym)


def expected_structure_totals(gamma: int, kappa: int) -> dict[int, int]:
    """Per-structure candidate totals implied by the block template counts."""
    out = {}
    for (nr, nc), t in template_counts(4).items():
        s = STRUCTURE_8[(nr, nc)]
        out[s] = out.get(s, 0) + t * comb(gamma, nr) * comb(kappa, nc)
    return out


def _entries(m) -> np.ndarray:
    return m.entries if isinstance(m, (PartitioningMatrix, LiftingMatrix)) else np.asarray(m, dtype=np.int64)


def partition_sum(cand: CycleCandidate, P) -> int:
    """Signed sum of partition entries along the walk; zero means it survives."""
    P = _entries(P)
    return int(sum(P[a] - P[b] for a, b in cand.entries()))


def partition_sums(cands: CandidateSet, P) -> np.ndarray:
    return kernels.signed_sums(_entries(P), cands.rows, cands.cols)


def count_protograph_candidates(P) -> tuple[int, int]:
    """Numbers of six- and eight-cycle candidates surviving partition ``P``."""
    P = _entries(P)
    gamma, kappa = P.shape
    out = []
    for g in (3, 4):
        cands = enumerate_candidates(gamma, kappa, g)
        out.append(int(np.count_nonzero(partition_sums(cands, P) == 0)))
    return out[0], out[1]


def walk_multiplicity(cands: CandidateSet, P, Lmat, z: int, replicas: int,
                      convention: str = "full", simple_only: bool = True) -> np.ndarray:
    """Number of Tanner-graph cycles each candidate lifts to.

    ``full`` counts every placement inside the ``replicas`` column blocks of
    the terminated code (``z * max(0, replicas - span)``). ``period`` counts
    one placement per column block of an unterminated chain (``z``).
    With ``simple_only=False`` closed walks that revisit a lifted node are
    counted too. Candidates that map onto themselves under a rotation (a
    4-cycle traversed twice) reach each lifted cycle from several starting
    copies, so their count is divided by the stabiliser order.
    """
    if convention not in CONVENTIONS:
        raise ValidationError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    P, L = _entries(P), _entries(Lmat)
    out = np.zeros(len(cands), dtype=np.int64)
    alive = np.flatnonzero(partition_sums(cands, P) == 0)
    if alive.size == 0:
        return out
    sub = cands.subset(alive)
    span, closed, simple = kernels.walk_profile(P, L, sub.rows, sub.cols, z)
    keep = closed.astype(bool)
    if simple_only:
        keep &= simple.astype(bool)
    if convention == "full":
        mult = z * np.maximum(0, replicas - span)
    else:
        mult = np.full(len(span), z, dtype=np.int64)
    out[alive] = np.where(keep, mult // sub.symmetry, 0)
    return out


def count_tanner_cycles(P, Lmat, z: int, replicas: int, convention: str = "full") -> tuple[int, int]:
    """Numbers of six- and eight-cycles in the lifted coupled Tanner graph."""
    P = _entries(P)
    if z < 1 or replicas < 1:
        raise ValidationError(f"z and replicas must be >= 1, got z={z}, replicas={replicas}")
    gamma, kappa = P.shape
    out = []
    for g in (3, 4):
        cands = enumerate_candidates(gamma, kappa, g)
        out.append(int(walk_multiplicity(cands, P, Lmat, z, replicas, convention).sum()))
    return out[0], out[1]


class NodeCandidateIndex:
    """Candidates passing through each base-matrix entry.

    ``members(i, j)`` returns candidate indices and the net coefficient of
    entry ``(i, j)`` in each candidate's signed sum (+1 per ``(i_k, j_k)``
    visit, -1 per ``(i_k, j_{k+1})`` visit).
    """

    def __init__(self, cands: CandidateSet):
        self.cands = cands
        self.gamma, self.kappa = cands.gamma, cands.kappa
        nn = self.gamma * self.kappa
        n, g = len(cands), cands.g
        nodes = np.concatenate([cands.plus_nodes(), cands.minus_nodes()], axis=1).astype(np.int32)
        signs = np.r_[np.ones(g, np.int8), -np.ones(g, np.int8)]
        # Net coefficient per visit, kept only on the first visit of each entry.
        coef = np.zeros(nodes.shape, dtype=np.int8)
        first = np.ones(nodes.shape, dtype=bool)
        for b in range(2 * g):
            same = nodes == nodes[:, b:b + 1]
            coef += same.astype(np.int8) * signs[b]
            first[:, b + 1:] &= ~same[:, b + 1:]
        keep = first & (coef != 0)
        del first
        cid = np.broadcast_to(np.arange(n, dtype=np.int32)[:, None], nodes.shape)[keep]
        node = nodes[keep]
        coef = coef[keep]
        del nodes, keep
        order = np.argsort(node, kind="stable")
        self._cand = cid[order]
        self._coef = coef[order]
        self._bounds = np.searchsorted(node[order], np.arange(nn + 1))

    def members(self, i: int, j: int) -> tuple[np.ndarray, np.ndarray]:
        k = i * self.kappa + j
        lo, hi = self._bounds[k], self._bounds[k + 1]
        return self._cand[lo:hi], self._coef[lo:hi].astype(np.int64)


@lru_cache(maxsize=4)
def node_index(gamma: int, kappa: int, g: int) -> NodeCandidateIndex:
    """Cached index over all candidates of the given size."""
    return NodeCandidateIndex(enumerate_candidates(gamma, kappa, g))


def build_parity_matrix(params: CodeParameters, P, Lmat) -> np.ndarray:
    """Binary parity-check matrix of the terminated coupled code.

    Replica ``r`` occupies column block ``r``; the entry with component index
    ``a`` lands in row block ``r + a`` and is expanded to the circulant whose
    row ``t`` has its one in column ``(t + power) mod z``.
    """
    P, Lm = _entries(P), _entries(Lmat)
    gamma, kappa, z, L, m = (params.gamma, params.kappa, params.circulant_size,
                             params.replicas, params.memory)
    if P.shape != (gamma, kappa) or Lm.shape != (gamma, kappa):
        raise ValidationError(f"matrices must be {gamma}x{kappa}")
    edges = gamma * kappa * z * L
    if edges > MAX_EDGES:
        raise ValidationError(f"parity matrix would have {edges} edges (limit {MAX_EDGES})")
    H = np.zeros((gamma * z * (L + m), kappa * z * L), dtype=np.uint8)
    t = np.arange(z)
    for r in range(L):
        for i in range(gamma):
            for j in range(kappa):
                row0 = (r + P[i, j]) * gamma * z + i * z
                col0 = r * kappa * z + j * z
                H[row0 + t, col0 + (t + Lm[i, j]) % z] = 1
    return H


def brute_force_tanner_count(H, g: int) -> int:
    """Count cycles of length ``2g`` in the Tanner graph of ``H`` directly.

    Each cycle is found from its smallest node in both directions, so the
    number of closing paths is halved.
    """
    H = np.asarray(H)
    if g < 2:
        raise ValidationError(f"g must be >= 2, got {g}")
    rows, cols = np.nonzero(H)
    if len(rows) > MAX_EDGES:
        raise ValidationError(f"matrix has {len(rows)} edges (limit {MAX_EDGES})")
    M = H.shape[0]
    adj = [[] for _ in range(M + H.shape[1])]
    for r, c in zip(rows.tolist(), cols.tolist()):
        adj[r].append(M + c)
        adj[M + c].append(r)
    length = 2 * g
    total = 0
    on_path = [False] * len(adj)
    for s in range(len(adj)):
        on_path[s] = True
        stack = [(s, 0, iter(adj[s]))]
        while stack:
            node, depth, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                if node != s:
                    on_path[node] = False
                continue
            if depth == length - 1:
                if nxt == s:
                    total += 1
                continue
            if nxt > s and not on_path[nxt]:
                on_path[nxt] = True
                stack.append((nxt, depth + 1, iter(adj[nxt])))
        on_path[s] = False
    return total // 2
