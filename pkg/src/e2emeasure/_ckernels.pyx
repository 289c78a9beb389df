# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
import numpy as np


cdef inline int _min3(int a, int b, int c) nogil:
    if b < a:
        a = b
    if c < a:
        a = c
    return a


cdef int _distance(const int[::1] a, const int[::1] b, int* row) nogil:
    cdef Py_ssize_t n = a.shape[0], m = b.shape[0], i, j
    cdef int diag, up, ai
    for j in range(m + 1):
        row[j] = <int>j
    for i in range(1, n + 1):
        diag = row[0]
        row[0] = <int>i
        ai = a[i - 1]
        for j in range(1, m + 1):
            up = row[j]
            row[j] = _min3(diag + (ai != b[j - 1]), up + 1, row[j - 1] + 1)
            diag = up
    return row[m]


def distance(const int[::1] a, const int[::1] b):
    if a.shape[0] == 0:
        return b.shape[0]
    if b.shape[0] == 0:
        return a.shape[0]
    cdef int* row = <int*>PyMem_Malloc((b.shape[0] + 1) * sizeof(int))
    if row == NULL:
        raise MemoryError()
    cdef int d
    try:
        with nogil:
            d = _distance(a, b, row)
    finally:
        PyMem_Free(row)
    return d


def prefix_distances(const int[::1] g, const int[::1] stream, Py_ssize_t start, ends, limit):
    cdef Py_ssize_t k = g.shape[0], j, pos = start, e, t, n_ends = len(ends)
    cdef int diag, up, v, best, c
    out = []
    if n_ends == 0:
        return out
    cdef int* col = <int*>PyMem_Malloc((k + 1) * sizeof(int))
    cdef int* reach = <int*>PyMem_Malloc(n_ends * sizeof(int))
    if col == NULL or reach == NULL:
        PyMem_Free(col)
        PyMem_Free(reach)
        raise MemoryError()
    try:
        if isinstance(limit, int):
            for t in range(n_ends):
                reach[t] = <int>limit
        else:
            reach[n_ends - 1] = <int>limit[n_ends - 1]
            for t in range(n_ends - 2, -1, -1):
                v = <int>limit[t]
                reach[t] = v if v > reach[t + 1] else reach[t + 1]
        for j in range(k + 1):
            col[j] = <int>j
        for t in range(n_ends):
            e = ends[t]
            while pos < e:
                c = stream[pos]
                diag = col[0]
                col[0] = diag + 1
                best = col[0]
                for j in range(1, k + 1):
                    up = col[j]
                    v = _min3(diag + (g[j - 1] != c), up + 1, col[j - 1] + 1)
                    col[j] = v
                    diag = up
                    if v < best:
                        best = v
                pos += 1
                if best > reach[t]:
                    return out
            out.append(col[k])
    finally:
        PyMem_Free(col)
        PyMem_Free(reach)
    return out


def edit_counts(const int[::1] a, const int[::1] b):
    """(ins, dele, sub, cor) of one optimal script; ties prefer match/sub, then delete."""
    cdef Py_ssize_t n = a.shape[0], m = b.shape[0], i, j, w = m + 1
    cdef int ins = 0, dele = 0, sub = 0, cor = 0, here
    cdef int* t = <int*>PyMem_Malloc((n + 1) * (m + 1) * sizeof(int))
    if t == NULL:
        raise MemoryError()
    try:
        with nogil:
            for j in range(m + 1):
                t[j] = <int>j
            for i in range(1, n + 1):
                t[i * w] = <int>i
                for j in range(1, m + 1):
                    t[i * w + j] = _min3(t[(i - 1) * w + j - 1] + (a[i - 1] != b[j - 1]),
                                         t[(i - 1) * w + j] + 1, t[i * w + j - 1] + 1)
            i, j = n, m
            while i > 0 or j > 0:
                here = t[i * w + j]
                if i > 0 and j > 0 and t[(i - 1) * w + j - 1] + (a[i - 1] != b[j - 1]) == here:
                    if a[i - 1] == b[j - 1]:
                        cor += 1
                    else:
                        sub += 1
                    i -= 1
                    j -= 1
                elif i > 0 and t[(i - 1) * w + j] + 1 == here:
                    dele += 1
                    i -= 1
                else:
                    ins += 1
                    j -= 1
    finally:
        PyMem_Free(t)
    return ins, dele, sub, cor


cdef int _best_substring_long(const int[::1] p, const int[::1] t) nogil:
    cdef Py_ssize_t m = p.shape[0], n = t.shape[0], i, j
    cdef int* col = <int*>malloc((m + 1) * sizeof(int))
    cdef int diag, up, v, c, best = <int>m
    for i in range(m + 1):
        col[i] = <int>i
    for j in range(n):
        c = t[j]
        diag = 0
        col[0] = 0
        for i in range(1, m + 1):
            up = col[i]
            v = _min3(diag + (p[i - 1] != c), up + 1, col[i - 1] + 1)
            col[i] = v
            diag = up
        if col[m] < best:
            best = col[m]
    free(col)
    return best


def best_substring_distances(patterns, const int[::1] text):
    """``best_substring_distance`` of every pattern against one text."""
    cdef Py_ssize_t n = text.shape[0], m, i, j
    cdef int top_sym = 0
    for j in range(n):
        if text[j] > top_sym:
            top_sym = text[j]
    cdef uint64_t* table = <uint64_t*>PyMem_Malloc((top_sym + 1) * sizeof(uint64_t))
    if table == NULL:
        raise MemoryError()
    cdef const int[::1] p
    cdef uint64_t full, bit, pv, mv, eq, xv, xh, ph, mh
    cdef int score, best, c
    out = []
    try:
        for j in range(top_sym + 1):
            table[j] = 0
        for pat in patterns:
            p = pat
            m = p.shape[0]
            if m == 0:
                out.append(0)
                continue
            if m > 64:
                with nogil:
                    best = _best_substring_long(p, text)
                out.append(best)
                continue
            for i in range(m):
                if 0 <= p[i] <= top_sym:
                    table[p[i]] |= (<uint64_t>1) << i
            full = (<uint64_t>0xFFFFFFFFFFFFFFFF) >> (64 - m)
            bit = (<uint64_t>1) << (m - 1)
            pv, mv = full, 0
            score = best = <int>m
            with nogil:
                for j in range(n):
                    eq = table[text[j]] if text[j] >= 0 else 0
                    xv = eq | mv
                    xh = ((((eq & pv) + pv) & full) ^ pv) | eq
                    ph = (mv | ~(xh | pv)) & full
                    mh = pv & xh
                    if ph & bit:
                        score += 1
                    elif mh & bit:
                        score -= 1
                        if score < best:
                            best = score
                            if best == 0:
                                break
                    ph = (ph << 1) & full
                    mh = (mh << 1) & full
                    pv = (mh | ~(xv | ph)) & full
                    mv = ph & xv
            for i in range(m):
                if 0 <= p[i] <= top_sym:
                    table[p[i]] = 0
            out.append(best)
    finally:
        PyMem_Free(table)
    return out


def distance_matrix(hyps, gts):
    cdef Py_ssize_t n = len(hyps), m = len(gts), y, x, longest = 0
    cdef const int[::1] h
    cdef const int[::1] g
    for g_obj in gts:
        if len(g_obj) > longest:
            longest = len(g_obj)
    result = np.zeros((n, m), dtype=np.int64)
    cdef long long[:, ::1] res = result
    cdef int* row = <int*>PyMem_Malloc((longest + 1) * sizeof(int))
    if row == NULL:
        raise MemoryError()
    try:
        for y in range(n):
            h = hyps[y]
            for x in range(m):
                g = gts[x]
                if h.shape[0] == 0:
                    res[y, x] = g.shape[0]
                elif g.shape[0] == 0:
                    res[y, x] = h.shape[0]
                else:
                    res[y, x] = _distance(h, g, row)
    finally:
        PyMem_Free(row)
    return result.tolist()
