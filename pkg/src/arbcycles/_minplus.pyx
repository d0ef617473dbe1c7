# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled min-plus and Floyd-Warshall kernels over int64 matrices.

Entries equal to the caller's infinity sentinel mark missing paths; the
sentinel must be small enough that sentinel + sentinel does not overflow
int64 (the library uses int64 max / 4).
"""

import numpy as np

cimport numpy as cnp

ctypedef cnp.int64_t i64

cnp.import_array()


def min_plus(const i64[:, ::1] a, const i64[:, ::1] b, i64 inf):
    """C[i, j] = min_k a[i, k] + b[k, j], saturating at inf."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t kn = a.shape[1]
    cdef Py_ssize_t m = b.shape[1]
    if b.shape[0] != kn:
        raise ValueError("inner dimensions differ")
    out = np.full((n, m), inf, dtype=np.int64)
    cdef i64[:, ::1] c = out
    cdef Py_ssize_t i, j, k
    cdef i64 aik, t
    for i in range(n):
        for k in range(kn):
            aik = a[i, k]
            if aik >= inf:
                continue
            for j in range(m):
                t = aik + b[k, j]
                if t < c[i, j]:
                    c[i, j] = t
    return out


def min_plus_witness(const i64[:, ::1] a, const i64[:, ::1] b, i64 inf):
    """min_plus plus a witness matrix: smallest k attaining each minimum.

    Witness entries are -1 where the product entry stays at inf.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t kn = a.shape[1]
    cdef Py_ssize_t m = b.shape[1]
    if b.shape[0] != kn:
        raise ValueError("inner dimensions differ")
    out = np.full((n, m), inf, dtype=np.int64)
    wit = np.full((n, m), -1, dtype=np.int64)
    cdef i64[:, ::1] c = out
    cdef i64[:, ::1] w = wit
    cdef Py_ssize_t i, j, k
    cdef i64 aik, t
    # k ascending with strict improvement keeps the smallest attaining k.
    for i in range(n):
        for k in range(kn):
            aik = a[i, k]
            if aik >= inf:
                continue
            for j in range(m):
                t = aik + b[k, j]
                if t < c[i, j]:
                    c[i, j] = t
                    w[i, j] = k
    return out, wit


def floyd_warshall(i64[:, ::1] dist, i64[:, ::1] nxt, i64[::1] via, i64 inf):
    """In-place Floyd-Warshall with successor tracking.

    nxt[i, j] is the node after i on a realized shortest i->j walk (-1 if
    none).  via[i] records the last intermediate k that improved dist[i, i],
    so a minimum cycle through i splits into legs i->via[i] and via[i]->i.
    """
    cdef Py_ssize_t n = dist.shape[0]
    cdef Py_ssize_t i, j, k
    cdef i64 dik, t
    for k in range(n):
        for i in range(n):
            dik = dist[i, k]
            if dik >= inf:
                continue
            for j in range(n):
                t = dik + dist[k, j]
                if t < dist[i, j]:
                    dist[i, j] = t
                    nxt[i, j] = nxt[i, k]
                    if i == j:
                        via[i] = k
