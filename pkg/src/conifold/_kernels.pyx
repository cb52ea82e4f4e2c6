# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Gaussian elimination over F_p for word-sized primes.

Entries are held as 64-bit integers; every product is of two residues below
``p < 2**31`` so intermediate values stay below ``2**63``.
"""
from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef inline i64 _inv(i64 a, i64 p) nogil:
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef Py_ssize_t _eliminate(i64 *a, Py_ssize_t nr, Py_ssize_t nc, i64 p,
                           bint reduced, Py_ssize_t *pivots) nogil:
    cdef Py_ssize_t r = 0, c, i, j, piv, start
    cdef i64 inv, f, tmp
    for c in range(nc):
        if r == nr:
            break
        piv = -1
        for i in range(r, nr):
            if a[i * nc + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, nc):
                tmp = a[r * nc + j]
                a[r * nc + j] = a[piv * nc + j]
                a[piv * nc + j] = tmp
        inv = _inv(a[r * nc + c], p)
        for j in range(c, nc):
            a[r * nc + j] = (a[r * nc + j] * inv) % p
        start = 0 if reduced else r + 1
        for i in range(start, nr):
            if i == r:
                continue
            f = a[i * nc + c]
            if f == 0:
                continue
            f = p - f
            for j in range(c, nc):
                if a[r * nc + j] != 0:
                    a[i * nc + j] = (a[i * nc + j] + f * a[r * nc + j]) % p
        pivots[r] = c
        r += 1
    return r


cdef i64 *_load(list rows, Py_ssize_t nr, Py_ssize_t nc, i64 p) except NULL:
    cdef i64 *a = <i64 *> malloc(nr * nc * sizeof(i64))
    cdef Py_ssize_t i, j
    cdef list row
    if a == NULL:
        raise MemoryError()
    for i in range(nr):
        row = rows[i]
        if len(row) != nc:
            free(a)
            raise ValueError("ragged matrix")
        for j in range(nc):
            a[i * nc + j] = row[j] % p
    return a


def rank_modp(list rows, long long p):
    """Rank over F_p of a dense matrix given as a list of integer rows."""
    cdef Py_ssize_t nr = len(rows), nc, r
    if nr == 0:
        return 0
    nc = len(rows[0])
    if nc == 0:
        return 0
    cdef i64 *a = _load(rows, nr, nc, p)
    cdef Py_ssize_t *pivots = <Py_ssize_t *> malloc(nr * sizeof(Py_ssize_t))
    if pivots == NULL:
        free(a)
        raise MemoryError()
    with nogil:
        r = _eliminate(a, nr, nc, p, False, pivots)
    free(a)
    free(pivots)
    return r


def rref_modp(list rows, long long p):
    """Reduced row echelon form over F_p; returns ``(rows, pivot_columns)``."""
    cdef Py_ssize_t nr = len(rows), nc, r, i, j
    if nr == 0:
        return [], []
    nc = len(rows[0])
    if nc == 0:
        return [[] for _ in range(nr)], []
    cdef i64 *a = _load(rows, nr, nc, p)
    cdef Py_ssize_t *pivots = <Py_ssize_t *> malloc(nr * sizeof(Py_ssize_t))
    if pivots == NULL:
        free(a)
        raise MemoryError()
    with nogil:
        r = _eliminate(a, nr, nc, p, True, pivots)
    out = [[a[i * nc + j] for j in range(nc)] for i in range(nr)]
    piv = [pivots[i] for i in range(r)]
    free(a)
    free(pivots)
    return out, piv
