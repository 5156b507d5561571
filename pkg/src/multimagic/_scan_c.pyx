# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernel: exact power sums with 128-bit accumulators.

Value generation and accumulation run in C with the GIL released, so
thread workers scale on real cores.  Accumulators are unsigned 128-bit
integers; the dispatcher guarantees ncells**emax * m < 2**126 before
routing a scan here, which makes overflow impossible.
"""

import numpy as np

from libc.stdlib cimport calloc, free

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

IS_COMPILED = True

MAX_DEGREE = 8


cdef inline object _to_pyint(u128 x):
    cdef unsigned long long hi = <unsigned long long> (x >> 64)
    cdef unsigned long long lo = <unsigned long long> (x & <u128> 0xFFFFFFFFFFFFFFFFULL)
    if hi:
        return (int(hi) << 64) | int(lo)
    return int(lo)


def scan_pair(aa_in, bb_in, add_in, wt_in, int emax,
              Py_ssize_t row_start, Py_ssize_t row_end, bint want_presence):
    """Interface mirrors _scan_py.scan_pair; see there for semantics."""
    cdef int[:, ::1] aa = np.ascontiguousarray(aa_in, dtype=np.int32)
    cdef int[:, ::1] bb = np.ascontiguousarray(bb_in, dtype=np.int32)
    cdef int[:, ::1] add_table = np.ascontiguousarray(add_in, dtype=np.int32)
    cdef long long[:, ::1] wtable = np.ascontiguousarray(wt_in, dtype=np.int64)

    cdef Py_ssize_t m = aa.shape[0]
    cdef Py_ssize_t size = aa.shape[1]
    if emax < 1 or emax > MAX_DEGREE:
        raise ValueError(f"degree must be 1..{MAX_DEGREE}")

    presence = np.zeros(m * m if want_presence else 1, dtype=np.uint8)
    cdef unsigned char[::1] pres = presence

    cdef u128 *rows_acc = <u128 *> calloc((row_end - row_start) * emax, sizeof(u128))
    cdef u128 *cols_acc = <u128 *> calloc(m * emax, sizeof(u128))
    cdef u128 *diag_acc = <u128 *> calloc(emax, sizeof(u128))
    cdef u128 *anti_acc = <u128 *> calloc(emax, sizeof(u128))
    if rows_acc == NULL or cols_acc == NULL or diag_acc == NULL or anti_acc == NULL:
        free(rows_acc); free(cols_acc); free(diag_acc); free(anti_acc)
        raise MemoryError()

    cdef Py_ssize_t i, j, k, e
    cdef long long v
    cdef u128 p
    cdef int w
    try:
        with nogil:
            for i in range(row_start, row_end):
                for j in range(m):
                    v = 1
                    for k in range(size):
                        w = add_table[aa[i, k], bb[j, k]]
                        v += wtable[k, w]
                    if want_presence:
                        pres[v - 1] = 1
                    p = <u128> v
                    for e in range(emax):
                        rows_acc[(i - row_start) * emax + e] += p
                        cols_acc[j * emax + e] += p
                        if j == i:
                            diag_acc[e] += p
                        if j == m - 1 - i:
                            anti_acc[e] += p
                        p *= <u128> v
        return _collect(rows_acc, cols_acc, diag_acc, anti_acc,
                        row_end - row_start, m, emax,
                        presence if want_presence else None)
    finally:
        free(rows_acc); free(cols_acc); free(diag_acc); free(anti_acc)


def scan_dense(values_in, int emax, Py_ssize_t row_start, Py_ssize_t row_end,
               bint want_presence):
    cdef long long[:, ::1] values = np.ascontiguousarray(values_in, dtype=np.int64)
    cdef Py_ssize_t m = values.shape[0]
    if emax < 1 or emax > MAX_DEGREE:
        raise ValueError(f"degree must be 1..{MAX_DEGREE}")

    presence = np.zeros(m * m if want_presence else 1, dtype=np.uint8)
    cdef unsigned char[::1] pres = presence

    cdef u128 *rows_acc = <u128 *> calloc((row_end - row_start) * emax, sizeof(u128))
    cdef u128 *cols_acc = <u128 *> calloc(m * emax, sizeof(u128))
    cdef u128 *diag_acc = <u128 *> calloc(emax, sizeof(u128))
    cdef u128 *anti_acc = <u128 *> calloc(emax, sizeof(u128))
    if rows_acc == NULL or cols_acc == NULL or diag_acc == NULL or anti_acc == NULL:
        free(rows_acc); free(cols_acc); free(diag_acc); free(anti_acc)
        raise MemoryError()

    cdef Py_ssize_t i, j, e
    cdef long long v
    cdef u128 p
    try:
        with nogil:
            for i in range(row_start, row_end):
                for j in range(m):
                    v = values[i, j]
                    if want_presence and 1 <= v <= m * m:
                        pres[v - 1] = 1
                    p = <u128> v
                    for e in range(emax):
                        rows_acc[(i - row_start) * emax + e] += p
                        cols_acc[j * emax + e] += p
                        if j == i:
                            diag_acc[e] += p
                        if j == m - 1 - i:
                            anti_acc[e] += p
                        p *= <u128> v
        return _collect(rows_acc, cols_acc, diag_acc, anti_acc,
                        row_end - row_start, m, emax,
                        presence if want_presence else None)
    finally:
        free(rows_acc); free(cols_acc); free(diag_acc); free(anti_acc)


cdef _collect(u128 *rows_acc, u128 *cols_acc, u128 *diag_acc, u128 *anti_acc,
              Py_ssize_t nrows, Py_ssize_t m, int emax, presence):
    row_sums = [[_to_pyint(rows_acc[i * emax + e]) for e in range(emax)]
                for i in range(nrows)]
    col_sums = [[_to_pyint(cols_acc[j * emax + e]) for e in range(emax)]
                for j in range(m)]
    diag = [_to_pyint(diag_acc[e]) for e in range(emax)]
    anti = [_to_pyint(anti_acc[e]) for e in range(emax)]
    return row_sums, col_sums, diag, anti, presence
