# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled ordering-search kernels.

Both functions take a dense C-contiguous int64 matrix and work on indices
only; label handling lives in the pure-Python callers.  The signatures and
results match :mod:`triangulift._fallback` exactly.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


def peel(const cnp.int64_t[:, ::1] d, const cnp.int64_t[::1] scan):
    """Greedy peel.  Returns a list of (row, col) pairs in order, or None."""
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t m = d.shape[1]
    cdef Py_ssize_t i, j, k, r, c, step
    if n != m:
        return None
    cdef cnp.int64_t[::1] support = np.zeros(n, dtype=np.int64)
    cdef cnp.uint8_t[::1] row_alive = np.ones(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] col_alive = np.ones(n, dtype=np.uint8)
    for i in range(n):
        for j in range(n):
            if d[i, j] != 0:
                support[i] += 1
    out = []
    for step in range(n):
        r = -1
        c = -1
        for k in range(n):
            i = scan[k]
            if row_alive[i] and support[i] == 1:
                for j in range(n):
                    if col_alive[j] and d[i, j] != 0:
                        if d[i, j] == 1:
                            r = i
                            c = j
                        break
                if r >= 0:
                    break
        if r < 0:
            return None
        row_alive[r] = 0
        col_alive[c] = 0
        for i in range(n):
            if row_alive[i] and d[i, c] != 0:
                support[i] -= 1
        out.append((r, c))
    return out


cdef bint _next_perm(Py_ssize_t* a, Py_ssize_t n) noexcept:
    cdef Py_ssize_t i, j, t
    if n < 2:
        return 0
    i = n - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return 0
    j = n - 1
    while a[j] <= a[i]:
        j -= 1
    t = a[i]; a[i] = a[j]; a[j] = t
    i += 1
    j = n - 1
    while i < j:
        t = a[i]; a[i] = a[j]; a[j] = t
        i += 1
        j -= 1
    return 1


def exhaustive(const cnp.int64_t[:, ::1] d):
    """Every (row order, column order) pair making ``d`` lower unitriangular.

    Literal enumeration of all n!*n! pairs in lexicographic order.
    """
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t i, j
    cdef bint ok
    if n != d.shape[1]:
        return []
    if n == 0:
        return [((), ())]
    cdef cnp.intp_t[::1] rp = np.arange(n, dtype=np.intp)
    cdef cnp.intp_t[::1] cp = np.arange(n, dtype=np.intp)
    cdef Py_ssize_t* rpp = <Py_ssize_t*> &rp[0]
    cdef Py_ssize_t* cpp = <Py_ssize_t*> &cp[0]
    out = []
    while True:
        for j in range(n):
            cp[j] = j
        while True:
            ok = 1
            for i in range(n):
                if d[rp[i], cp[i]] != 1:
                    ok = 0
                    break
                for j in range(i + 1, n):
                    if d[rp[i], cp[j]] != 0:
                        ok = 0
                        break
                if not ok:
                    break
            if ok:
                out.append((tuple([rp[i] for i in range(n)]),
                            tuple([cp[i] for i in range(n)])))
            if not _next_perm(cpp, n):
                break
        if not _next_perm(rpp, n):
            break
    return out
