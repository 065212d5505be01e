# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: throughflow accumulation and percolation profile.

Same contracts as ``_kernels_py``; see that module for the math.  The
compiled loops sum per edge rather than per pair-slice, so totals agree
with the fallback to rounding, not bitwise.
"""

from libc.math cimport fabs

import numpy as np

__all__ = ["throughflow_accumulate", "percolation_profile"]


def throughflow_accumulate(K, eu, ev, ew):
    """Sum absolute edge currents over all unordered source/sink pairs.

    ``K`` is the grounded inverse Laplacian of one connected component
    (nc x nc, C order); ``eu``, ``ev``, ``ew`` list its edges.  Each
    edge credits its absolute current to both endpoints, summed over
    pairs a < b at unit injected current.
    """
    K = np.ascontiguousarray(K, dtype=np.float64)
    eu = np.ascontiguousarray(eu, dtype=np.int64)
    ev = np.ascontiguousarray(ev, dtype=np.int64)
    ew = np.ascontiguousarray(ew, dtype=np.float64)

    cdef double[:, ::1] Kv = K
    cdef long long[::1] euv = eu
    cdef long long[::1] evv = ev
    cdef double[::1] eww = ew
    cdef Py_ssize_t nc = Kv.shape[0]
    cdef Py_ssize_t m = euv.shape[0]

    acc_arr = np.zeros(nc, dtype=np.float64)
    if m == 0 or nc < 2:
        return acc_arr
    cdef double[::1] acc = acc_arr

    ve_arr = np.empty(nc, dtype=np.float64)
    cdef double[::1] ve = ve_arr
    cdef Py_ssize_t e, a, b, u, v
    cdef double tot, w, va

    for e in range(m):
        u = <Py_ssize_t> euv[e]
        v = <Py_ssize_t> evv[e]
        w = eww[e]
        for a in range(nc):
            ve[a] = w * (Kv[u, a] - Kv[v, a])
        tot = 0.0
        for a in range(nc - 1):
            va = ve[a]
            for b in range(a + 1, nc):
                tot += fabs(va - ve[b])
        acc[u] += tot
        acc[v] += tot
    return acc_arr


def percolation_profile(eu, ev, n):
    """Largest-component size after inserting each edge in order.

    Union-find with path halving; direction is ignored (weak
    connectivity).  Returns an int64 array, one entry per edge.
    """
    eu = np.ascontiguousarray(eu, dtype=np.int64)
    ev = np.ascontiguousarray(ev, dtype=np.int64)

    cdef long long[::1] euv = eu
    cdef long long[::1] evv = ev
    cdef Py_ssize_t m = euv.shape[0]
    cdef Py_ssize_t nn = n

    out_arr = np.empty(m, dtype=np.int64)
    if m == 0:
        return out_arr
    cdef long long[::1] out = out_arr

    parent_arr = np.arange(nn, dtype=np.int64)
    size_arr = np.ones(nn, dtype=np.int64)
    cdef long long[::1] parent = parent_arr
    cdef long long[::1] sizev = size_arr

    cdef long long largest = 1 if nn > 0 else 0
    cdef Py_ssize_t k, x, ra, rb, tmp

    for k in range(m):
        x = <Py_ssize_t> euv[k]
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = <Py_ssize_t> parent[x]
        ra = x
        x = <Py_ssize_t> evv[k]
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = <Py_ssize_t> parent[x]
        rb = x
        if ra != rb:
            if sizev[ra] < sizev[rb]:
                tmp = ra
                ra = rb
                rb = tmp
            parent[rb] = ra
            sizev[ra] += sizev[rb]
            if sizev[ra] > largest:
                largest = sizev[ra]
        out[k] = largest
    return out_arr
