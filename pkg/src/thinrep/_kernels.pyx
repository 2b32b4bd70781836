# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(p) kernels; same contract as ``thinrep._kernels_py``."""

from libc.stdlib cimport malloc, free

NAME = "compiled"

ctypedef long long i64


cdef i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, nt = 1, r = p, nr = a, q, tmp
    while nr:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


def rref_modp(rows, Py_ssize_t npivot, i64 p):
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t w = len(rows[0]) if m else npivot
    cdef Py_ssize_t i, j, c, r = 0, piv
    cdef i64 f, iv, x
    cdef i64 *a
    cdef i64 *row
    cdef i64 *ai
    pivots = []
    if m == 0 or w == 0:
        return [list(rw) for rw in rows], pivots
    a = <i64 *> malloc(m * w * sizeof(i64))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(m):
            rw = rows[i]
            for j in range(w):
                a[i * w + j] = rw[j]
        for c in range(npivot):
            if r == m:
                break
            piv = r
            while piv < m and a[piv * w + c] == 0:
                piv += 1
            if piv == m:
                continue
            if piv != r:
                for j in range(w):
                    x = a[r * w + j]
                    a[r * w + j] = a[piv * w + j]
                    a[piv * w + j] = x
            row = a + r * w
            if row[c] != 1:
                iv = _inv(row[c], p)
                for j in range(c, w):
                    row[j] = row[j] * iv % p
            for i in range(m):
                if i == r:
                    continue
                ai = a + i * w
                f = ai[c]
                if f:
                    for j in range(c, w):
                        if row[j]:
                            ai[j] = (ai[j] - f * row[j]) % p
                            if ai[j] < 0:
                                ai[j] += p
            pivots.append(c)
            r += 1
        out = [[a[i * w + j] for j in range(w)] for i in range(m)]
    finally:
        free(a)
    return out, pivots


def matmul_modp(a_rows, b_rows, Py_ssize_t ncols, i64 p):
    cdef Py_ssize_t m = len(a_rows)
    cdef Py_ssize_t inner = len(b_rows)
    cdef Py_ssize_t i, j, k
    cdef i64 x
    cdef i64 *b
    cdef i64 *acc
    if m == 0:
        return []
    if inner == 0 or ncols == 0:
        return [[0] * ncols for _ in range(m)]
    b = <i64 *> malloc(inner * ncols * sizeof(i64))
    acc = <i64 *> malloc(ncols * sizeof(i64))
    if b == NULL or acc == NULL:
        free(b)
        free(acc)
        raise MemoryError()
    out = []
    try:
        for k in range(inner):
            rw = b_rows[k]
            for j in range(ncols):
                b[k * ncols + j] = rw[j]
        for i in range(m):
            arow = a_rows[i]
            for j in range(ncols):
                acc[j] = 0
            for k in range(inner):
                x = arow[k]
                if x:
                    for j in range(ncols):
                        acc[j] = (acc[j] + x * b[k * ncols + j]) % p
            out.append([acc[j] for j in range(ncols)])
    finally:
        free(b)
        free(acc)
    return out
