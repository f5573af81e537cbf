# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free Gauss-Jordan elimination on int64 rows.

Same contract as ``_elim_py.rref_int``.  Every multiply/subtract is overflow
checked; on overflow ``OverflowError`` is raised and the caller reruns the
problem on the arbitrary-precision path.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from libc.limits cimport LLONG_MIN

cdef extern from *:
    bint mul_ovf "__builtin_mul_overflow"(long long a, long long b, long long *res) nogil
    bint sub_ovf "__builtin_sub_overflow"(long long a, long long b, long long *res) nogil


cdef inline long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _combine(long long *dst, long long f, long long *src, long long g,
                  Py_ssize_t n) nogil:
    # dst <- f*dst - g*src ; returns 1 on overflow
    cdef Py_ssize_t j
    cdef long long u, v
    for j in range(n):
        if mul_ovf(dst[j], f, &u):
            return 1
        if mul_ovf(src[j], g, &v):
            return 1
        if sub_ovf(u, v, &dst[j]) or dst[j] == LLONG_MIN:
            return 1
    return 0


cdef int _primitive(long long *r, Py_ssize_t n, Py_ssize_t lead) nogil:
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(n):
        if r[j]:
            g = _gcd(g, r[j])
            if g == 1:
                break
    if g > 1:
        for j in range(n):
            r[j] = r[j] // g
    if r[lead] < 0:
        for j in range(n):
            r[j] = -r[j]
    return 0


def rref_int(rows, Py_ssize_t ncols):
    cdef Py_ssize_t maxrank = ncols
    cdef long long *basis = <long long *> malloc(sizeof(long long) * (maxrank * ncols + ncols + 1))
    cdef Py_ssize_t *pivcol = <Py_ssize_t *> malloc(sizeof(Py_ssize_t) * (maxrank + 1))
    cdef long long *r
    cdef long long *p
    cdef Py_ssize_t rank = 0, i, j, lead
    cdef long long a, pc, rl
    cdef bint nonzero
    if basis == NULL or pivcol == NULL:
        free(basis)
        free(pivcol)
        raise MemoryError()
    r = basis + maxrank * ncols
    try:
        for src in rows:
            if len(src) != ncols:
                raise ValueError("row length does not match column count")
            nonzero = False
            for j in range(ncols):
                r[j] = src[j]
                if r[j] == LLONG_MIN:
                    raise OverflowError("entry out of int64 range")
                if r[j]:
                    nonzero = True
            if not nonzero:
                continue
            for i in range(rank):
                p = basis + i * ncols
                a = r[pivcol[i]]
                if a:
                    pc = p[pivcol[i]]
                    if _combine(r, pc, p, a, ncols):
                        raise OverflowError("int64 overflow in elimination")
            lead = -1
            for j in range(ncols):
                if r[j]:
                    lead = j
                    break
            if lead < 0:
                continue
            if _primitive(r, ncols, lead):
                raise OverflowError("int64 overflow in elimination")
            rl = r[lead]
            for i in range(rank):
                p = basis + i * ncols
                a = p[lead]
                if a:
                    if _combine(p, rl, r, a, ncols):
                        raise OverflowError("int64 overflow in elimination")
                    if _primitive(p, ncols, pivcol[i]):
                        raise OverflowError("int64 overflow in elimination")
            memcpy(basis + rank * ncols, r, sizeof(long long) * ncols)
            pivcol[rank] = lead
            rank += 1
        order = sorted(range(rank), key=lambda k: pivcol[k])
        out = []
        pivots = []
        for i in order:
            p = basis + i * ncols
            out.append([p[j] for j in range(ncols)])
            pivots.append(pivcol[i])
        return out, pivots
    finally:
        free(basis)
        free(pivcol)
