"""Independent reference computations shared by several test modules."""

import itertools

import numpy as np

from sccode.cycles import enumerate_candidates


def exact_p6(a, p):
    """P[x1+x2+x3 == y1+y2+y3] for six i.i.d. draws, by full enumeration."""
    total = 0.0
    for idx in itertools.product(range(len(a)), repeat=6):
        vals = [a[k] for k in idx]
        if sum(vals[:3]) == sum(vals[3:]):
            total += np.prod([p[k] for k in idx])
    return total


def survival_probability(rows, cols, a, p):
    """Exact probability that one candidate survives an i.i.d. random partition."""
    g = len(rows)
    plus = [(rows[k], cols[k]) for k in range(g)]
    minus = [(rows[k], cols[(k + 1) % g]) for k in range(g)]
    cells = sorted(set(plus) | set(minus))
    pos = {c: n for n, c in enumerate(cells)}
    total = 0.0
    for idx in itertools.product(range(len(a)), repeat=len(cells)):
        s = sum(a[idx[pos[c]]] for c in plus) - sum(a[idx[pos[c]]] for c in minus)
        if s == 0:
            total += np.prod([p[k] for k in idx])
    return total


def representative(gamma, kappa, structure):
    c = enumerate_candidates(gamma, kappa, 3 if structure == 0 else 4)
    k = int(np.flatnonzero(c.structure == structure)[0])
    return c.rows[k].tolist(), c.cols[k].tolist()


def random_partitions(rng, a, p, shape, n):
    return np.asarray(a)[rng.choice(len(a), size=(n,) + shape, p=p)]


def survivors_batch(cands, Ps):
    """Surviving-candidate counts for a stack of partitions (pure numpy)."""
    B = len(Ps)
    flat = Ps.reshape(B, -1)
    kappa = Ps.shape[2]
    plus = (cands.rows.astype(np.int64) * kappa + cands.cols).ravel()
    minus = (cands.rows.astype(np.int64) * kappa + np.roll(cands.cols, -1, axis=1)).ravel()
    n, g = cands.rows.shape
    s = flat[:, plus].reshape(B, n, g).sum(2) - flat[:, minus].reshape(B, n, g).sum(2)
    return (s == 0).sum(1)
