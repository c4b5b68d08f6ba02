"""NumPy implementations of the counting kernels.

Same signatures and results as the compiled ``_kernels`` module; selected by
``sccode.kernels`` when the extension is unavailable.
"""

import numpy as np

CHUNK = 1 << 20


def signed_sums(values, rows, cols):
    """Per walk: sum of values[i_k, j_k] minus sum of values[i_k, j_{k+1}]."""
    values = np.asarray(values, dtype=np.int64)
    n = rows.shape[0]
    out = np.empty(n, dtype=np.int64)
    for lo in range(0, n, CHUNK):
        r = rows[lo:lo + CHUNK].astype(np.intp)
        c = cols[lo:lo + CHUNK].astype(np.intp)
        cn = np.roll(c, -1, axis=1)
        out[lo:lo + CHUNK] = values[r, c].sum(1) - values[r, cn].sum(1)
    return out


def walk_profile(part, lift, rows, cols, z):
    """Replica span, lift closure and lifted simplicity of each walk.

    Column blocks visited by the walk sit at offsets relative to its first
    column node; ``span`` is their range. ``closed`` is 1 when the circulant
    powers cancel modulo ``z``. ``simple`` is 1 when no base node is revisited
    at the same (block offset, circulant copy), i.e. the lifted closed walk is
    a genuine cycle.
    """
    part = np.asarray(part, dtype=np.int64)
    lift = np.asarray(lift, dtype=np.int64)
    n, g = rows.shape
    span = np.empty(n, dtype=np.int64)
    closed = np.empty(n, dtype=np.uint8)
    simple = np.empty(n, dtype=np.uint8)
    for lo in range(0, n, CHUNK):
        r = rows[lo:lo + CHUNK].astype(np.intp)
        c = cols[lo:lo + CHUNK].astype(np.intp)
        cn = np.roll(c, -1, axis=1)
        pp, pm = part[r, c], part[r, cn]
        lp, lm = lift[r, c], lift[r, cn]
        zero = np.zeros((len(r), 1), dtype=np.int64)
        off = np.concatenate([zero, np.cumsum(pp - pm, 1)[:, :-1]], 1)
        loff = np.concatenate([zero, np.cumsum(lm - lp, 1)[:, :-1]], 1) % z
        roff = off + pp
        rl = (loff - lp) % z
        span[lo:lo + CHUNK] = off.max(1) - off.min(1)
        closed[lo:lo + CHUNK] = ((lm - lp).sum(1) % z) == 0
        ok = np.ones(len(r), dtype=bool)
        for a in range(g):
            for b in range(a + 1, g):
                ok &= ~((c[:, a] == c[:, b]) & (off[:, a] == off[:, b]) & (loff[:, a] == loff[:, b]))
                ok &= ~((r[:, a] == r[:, b]) & (roff[:, a] == roff[:, b]) & (rl[:, a] == rl[:, b]))
        simple[lo:lo + CHUNK] = ok
    return span, closed, simple


def value_hits(rest, coef, weights, values):
    """For each v in values: total weight of entries with rest + coef*v == 0."""
    rest = np.asarray(rest, dtype=np.int64)
    coef = np.asarray(coef, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.int64)
    out = np.empty(len(values), dtype=np.int64)
    for k, v in enumerate(values):
        out[k] = weights[(rest + coef * int(v)) == 0].sum()
    return out


def modular_hits(rest, coef, weights, z):
    """For each s in [0, z): total weight of entries with rest + coef*s = 0 mod z."""
    rest = np.asarray(rest, dtype=np.int64)
    coef = np.asarray(coef, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.int64)
    out = np.empty(z, dtype=np.int64)
    for s in range(z):
        out[s] = weights[((rest + coef * s) % z) == 0].sum()
    return out
