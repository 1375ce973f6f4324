# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled int64 versions of the dense series kernels.

Same contracts as ``_pykernels``; any int64 overflow raises OverflowError so
the caller can rerun the exact pure-Python path.
"""

import numpy as np
cimport numpy as cnp

from libc.stdint cimport int64_t

cnp.import_array()

cdef extern from *:
    """
    static inline int eqz_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int eqz_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int eqz_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    """
    int eqz_add_ovf(long long a, long long b, long long *r) nogil
    int eqz_sub_ovf(long long a, long long b, long long *r) nogil
    int eqz_mul_ovf(long long a, long long b, long long *r) nogil


cdef inline void _overflow() except *:
    raise OverflowError("int64 overflow in series kernel")


cdef void _count_rec(Py_ssize_t i, Py_ssize_t n, int64_t deg, int64_t ch,
                     int64_t[::1] qs, int64_t[::1] cs, int64_t[:, ::1] tab,
                     int64_t[:, ::1] res, int64_t D) except *:
    cdef long long tmp
    if i == n - 1:
        while deg <= D:
            if eqz_add_ovf(res[deg, ch], 1, &tmp):
                _overflow()
            res[deg, ch] = tmp
            deg += qs[i]
            ch = tab[ch, cs[i]]
        return
    while deg <= D:
        _count_rec(i + 1, n, deg, ch, qs, cs, tab, res, D)
        deg += qs[i]
        ch = tab[ch, cs[i]]


def count_monomials(q, xchar, table, int D):
    cdef int64_t[:, ::1] tab = np.ascontiguousarray(table, dtype=np.int64)
    cdef Py_ssize_t size = tab.shape[0]
    cdef Py_ssize_t n = len(q)
    cdef int64_t[::1] qs = np.ascontiguousarray(q, dtype=np.int64)
    cdef int64_t[::1] cs = np.ascontiguousarray(xchar, dtype=np.int64)
    out = np.zeros((D + 1, size), dtype=np.int64)
    cdef int64_t[:, ::1] res = out
    if n == 0:
        res[0, 0] = 1
        return out
    _count_rec(0, n, 0, 0, qs, cs, tab, res, D)
    return out


def mul_geometric(arr, int shift, int char, table):
    cdef int64_t[:, ::1] tab = np.ascontiguousarray(table, dtype=np.int64)
    out = np.array(arr, dtype=np.int64, copy=True, order="C")
    cdef int64_t[:, ::1] a = out
    cdef Py_ssize_t D = a.shape[0] - 1
    cdef Py_ssize_t size = a.shape[1]
    cdef Py_ssize_t k, i
    cdef int64_t v, t
    cdef long long tmp
    for k in range(shift, D + 1):
        for i in range(size):
            v = a[k - shift, i]
            if v:
                t = tab[i, char]
                if eqz_add_ovf(a[k, t], v, &tmp):
                    _overflow()
                a[k, t] = tmp
    return out


def mul_one_minus(arr, int shift, int char, table):
    cdef int64_t[:, ::1] tab = np.ascontiguousarray(table, dtype=np.int64)
    out = np.array(arr, dtype=np.int64, copy=True, order="C")
    cdef int64_t[:, ::1] a = out
    cdef Py_ssize_t D = a.shape[0] - 1
    cdef Py_ssize_t size = a.shape[1]
    cdef Py_ssize_t k, i
    cdef int64_t v, t
    cdef long long tmp
    for k in range(D, shift - 1, -1):
        for i in range(size):
            v = a[k - shift, i]
            if v:
                t = tab[i, char]
                if eqz_sub_ovf(a[k, t], v, &tmp):
                    _overflow()
                a[k, t] = tmp
    return out


def convolve(a, b, table):
    cdef int64_t[:, ::1] tab = np.ascontiguousarray(table, dtype=np.int64)
    cdef int64_t[:, ::1] x = np.ascontiguousarray(a, dtype=np.int64)
    cdef int64_t[:, ::1] y = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t D = x.shape[0] - 1
    cdef Py_ssize_t size = x.shape[1]
    out = np.zeros((D + 1, size), dtype=np.int64)
    cdef int64_t[:, ::1] r = out
    cdef Py_ssize_t k1, k2, i, j
    cdef int64_t u, w
    cdef long long prod, tmp
    for k1 in range(D + 1):
        for i in range(size):
            u = x[k1, i]
            if not u:
                continue
            for k2 in range(D + 1 - k1):
                for j in range(size):
                    w = y[k2, j]
                    if w:
                        if eqz_mul_ovf(u, w, &prod):
                            _overflow()
                        if eqz_add_ovf(r[k1 + k2, tab[i, j]], prod, &tmp):
                            _overflow()
                        r[k1 + k2, tab[i, j]] = tmp
    return out
