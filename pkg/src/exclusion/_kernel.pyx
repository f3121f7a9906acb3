# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled scan primitives for the bounded sweep.

Mirrors the pure-Python module of the same primitives; the packed layout
is documented there.
"""

import numpy as np


def conflict_words(cells, n_rows, int n_vars, left_cols, right_cols):
    """Per-team 16-bit conflict pattern for one pair of column tuples."""
    cdef const unsigned char[:, ::1] cv = cells
    cdef const unsigned char[::1] rv = n_rows
    lc_arr = np.ascontiguousarray(left_cols, dtype=np.int64)
    rc_arr = np.ascontiguousarray(right_cols, dtype=np.int64)
    cdef const long long[::1] lc = lc_arr
    cdef const long long[::1] rc = rc_arr
    cdef Py_ssize_t count = cv.shape[0]
    cdef int width = cv.shape[1]
    cdef int arity = lc.shape[0]
    cdef Py_ssize_t t
    cdef int i, j, k, rows, ibase, jbase
    cdef unsigned short w
    cdef bint same
    out = np.zeros(count, dtype=np.uint16)
    cdef unsigned short[::1] ov = out
    for t in range(count):
        rows = rv[t]
        w = 0
        for i in range(rows):
            ibase = i * n_vars
            for j in range(rows):
                jbase = j * n_vars
                same = True
                for k in range(arity):
                    if cv[t, ibase + lc[k]] != cv[t, jbase + rc[k]]:
                        same = False
                        break
                if same:
                    w |= <unsigned short> (1 << (i * 4 + j))
        ov[t] = w
    return out


def any_counterexample(a, b, g, rc, nv):
    """Whether any packed team satisfies both constraint masks, evades the
    goal mask, and lies within the row-count and value-count masks."""
    cdef const unsigned long long[::1] av = a
    cdef const unsigned long long[::1] bv = b
    cdef const unsigned long long[::1] gv = g
    cdef const unsigned long long[::1] cv = rc
    cdef const unsigned long long[::1] nvv = nv
    cdef Py_ssize_t n = av.shape[0]
    cdef Py_ssize_t i
    for i in range(n):
        if av[i] & bv[i] & ~gv[i] & cv[i] & nvv[i]:
            return True
    return False
