# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled counting kernels; see ``_kernels_py`` for the reference versions."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.int16_t i16

cdef enum:
    MAXG = 16


cdef inline i64 _mod(i64 x, i64 z) noexcept nogil:
    cdef i64 r = x % z
    if r < 0:
        r += z
    return r


def signed_sums(values, const i16[:, ::1] rows, const i16[:, ::1] cols):
    cdef const i64[:, ::1] v = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t n = rows.shape[0], g = rows.shape[1], k, t
    out = np.empty(n, dtype=np.int64)
    cdef i64[::1] o = out
    cdef i64 acc
    with nogil:
        for k in range(n):
            acc = 0
            for t in range(g):
                acc += v[rows[k, t], cols[k, t]]
                acc -= v[rows[k, t], cols[k, (t + 1) % g]]
            o[k] = acc
    return out


def walk_profile(part, lift, const i16[:, ::1] rows, const i16[:, ::1] cols, i64 z):
    cdef const i64[:, ::1] p = np.ascontiguousarray(part, dtype=np.int64)
    cdef const i64[:, ::1] l = np.ascontiguousarray(lift, dtype=np.int64)
    cdef Py_ssize_t n = rows.shape[0], g = rows.shape[1], k, t, a, b
    if g > MAXG:
        raise ValueError("walk length too large")
    span_a = np.empty(n, dtype=np.int64)
    closed_a = np.empty(n, dtype=np.uint8)
    simple_a = np.empty(n, dtype=np.uint8)
    cdef i64[::1] span = span_a
    cdef cnp.uint8_t[::1] closed = closed_a
    cdef cnp.uint8_t[::1] simple = simple_a
    cdef i64 off[MAXG]
    cdef i64 loff[MAXG]
    cdef i64 roff[MAXG]
    cdef i64 rl[MAXG]
    cdef i64 o, lo_, mn, mx, pp, pm, lp, lm
    cdef int ok
    with nogil:
        for k in range(n):
            o = 0
            lo_ = 0
            mn = 0
            mx = 0
            for t in range(g):
                off[t] = o
                loff[t] = lo_
                pp = p[rows[k, t], cols[k, t]]
                pm = p[rows[k, t], cols[k, (t + 1) % g]]
                lp = l[rows[k, t], cols[k, t]]
                lm = l[rows[k, t], cols[k, (t + 1) % g]]
                roff[t] = o + pp
                rl[t] = _mod(lo_ - lp, z)
                if o < mn:
                    mn = o
                if o > mx:
                    mx = o
                o += pp - pm
                lo_ = _mod(lo_ + lm - lp, z)
            span[k] = mx - mn
            closed[k] = lo_ == 0
            ok = 1
            for a in range(g):
                for b in range(a + 1, g):
                    if (cols[k, a] == cols[k, b] and off[a] == off[b] and loff[a] == loff[b]):
                        ok = 0
                    if (rows[k, a] == rows[k, b] and roff[a] == roff[b] and rl[a] == rl[b]):
                        ok = 0
            simple[k] = ok
    return span_a, closed_a, simple_a


def value_hits(rest, coef, weights, values):
    cdef const i64[::1] r = np.ascontiguousarray(rest, dtype=np.int64)
    cdef const i64[::1] c = np.ascontiguousarray(coef, dtype=np.int64)
    cdef const i64[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef const i64[::1] vals = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t n = r.shape[0], m = vals.shape[0], k, t
    out = np.zeros(m, dtype=np.int64)
    cdef i64[::1] o = out
    with nogil:
        for k in range(n):
            for t in range(m):
                if r[k] + c[k] * vals[t] == 0:
                    o[t] += w[k]
    return out


def modular_hits(rest, coef, weights, i64 z):
    cdef const i64[::1] r = np.ascontiguousarray(rest, dtype=np.int64)
    cdef const i64[::1] c = np.ascontiguousarray(coef, dtype=np.int64)
    cdef const i64[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef Py_ssize_t n = r.shape[0], k
    cdef i64 s
    out = np.zeros(z, dtype=np.int64)
    cdef i64[::1] o = out
    with nogil:
        for k in range(n):
            for s in range(z):
                if _mod(r[k] + c[k] * s, z) == 0:
                    o[s] += w[k]
    return out
