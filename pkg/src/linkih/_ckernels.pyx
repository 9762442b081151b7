# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset-sum kernels (int64; callers guarantee no overflow)."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def subset_margin_signs(levels):
    cdef cnp.int64_t[:, ::1] w = np.ascontiguousarray(levels, dtype=np.int64)
    cdef Py_ssize_t L = w.shape[0], n = w.shape[1]
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    out = np.zeros(size, dtype=np.int8)
    cdef cnp.int8_t[::1] signs = out
    cdef cnp.int64_t[::1] margins = np.empty(size, dtype=np.int64)
    cdef Py_ssize_t lev, i, m, half
    cdef cnp.int64_t total, w2, v
    for lev in range(L):
        total = 0
        for i in range(n):
            total += w[lev, i]
        margins[0] = -total
        half = 1
        for i in range(n):
            w2 = 2 * w[lev, i]
            for m in range(half):
                margins[half + m] = margins[m] + w2
            half <<= 1
        for m in range(size):
            if signs[m] == 0:
                v = margins[m]
                if v > 0:
                    signs[m] = 1
                elif v < 0:
                    signs[m] = -1
    return out


def short_families(vectors):
    cdef cnp.int64_t[:, ::1] w = np.ascontiguousarray(vectors, dtype=np.int64)
    cdef Py_ssize_t N = w.shape[0], n = w.shape[1]
    if N == 0:
        return np.zeros((0, 0), dtype=np.uint8), np.zeros(0, dtype=bool)
    cdef Py_ssize_t half = (<Py_ssize_t>1) << (n - 1)
    flags_arr = np.zeros((N, half), dtype=np.uint8)
    generic_arr = np.ones(N, dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] flags = flags_arr
    cdef cnp.uint8_t[::1] generic = generic_arr
    cdef cnp.int64_t[::1] margins = np.empty(half, dtype=np.int64)
    cdef Py_ssize_t r, i, a, cur
    cdef cnp.int64_t total, w2, v, top
    for r in range(N):
        total = 0
        for i in range(n - 1):
            total += w[r, i]
        top = w[r, n - 1]
        margins[0] = -total + top
        cur = 1
        for i in range(n - 1):
            w2 = 2 * w[r, i]
            for a in range(cur):
                margins[cur + a] = margins[a] + w2
            cur <<= 1
        for a in range(half):
            v = margins[a]
            if v < 0:
                flags[r, a] = 1
            elif v == 0:
                generic[r] = 0
    return flags_arr, generic_arr.astype(bool)
