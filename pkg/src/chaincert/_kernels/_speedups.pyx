# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _pure.py.

matmul_mod / rref_mod run on C int64 (the caller guarantees p < 2^31, so a
product plus a reduced accumulator stays below 2^63). matmul_int keeps
Python-object arithmetic for arbitrary precision but moves the loop nest
out of the interpreter.
"""

from cpython.list cimport PyList_GET_ITEM, PyList_SET_ITEM, PyList_New
from cpython.ref cimport Py_INCREF
from libc.stdlib cimport free, malloc

IMPLEMENTATION = "compiled"


def matmul_int(a, b, Py_ssize_t m, Py_ssize_t n, Py_ssize_t k):
    cdef Py_ssize_t i, j, r
    cdef object x, y, acc
    alist = list(a)
    blist = list(b)
    out = [0] * (m * k)
    if m == 0 or n == 0 or k == 0:
        return out
    for i in range(m):
        for j in range(k):
            acc = 0
            for r in range(n):
                x = <object>PyList_GET_ITEM(alist, i * n + r)
                if x != 0:
                    y = <object>PyList_GET_ITEM(blist, r * k + j)
                    if y != 0:
                        acc = acc + x * y
            out[i * k + j] = acc
    return out


cdef long long* _to_c(seq, Py_ssize_t size) except NULL:
    cdef long long* buf = <long long*>malloc(size * sizeof(long long) if size else sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(size):
        buf[i] = seq[i]
    return buf


def matmul_mod(a, b, Py_ssize_t m, Py_ssize_t n, Py_ssize_t k, long long p):
    cdef Py_ssize_t i, j, r
    cdef long long acc, x
    out = [0] * (m * k)
    if m == 0 or n == 0 or k == 0:
        return out
    cdef long long* ca = _to_c(a, m * n)
    cdef long long* cb = _to_c(b, n * k)
    try:
        for i in range(m):
            for j in range(k):
                acc = 0
                for r in range(n):
                    x = ca[i * n + r]
                    if x != 0:
                        acc = (acc + x * cb[r * k + j]) % p
                out[i * k + j] = acc
    finally:
        free(ca)
        free(cb)
    return out


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a is nonzero mod p, p prime
    cdef long long g = a % p, x = 1, x1 = 0, g1 = p, q, t
    while g1 != 0:
        q = g / g1
        t = g - q * g1
        g = g1
        g1 = t
        t = x - q * x1
        x = x1
        x1 = t
    x %= p
    if x < 0:
        x += p
    return x


def rref_mod(a, Py_ssize_t m, Py_ssize_t n, long long p):
    cdef Py_ssize_t i, j, c, r, pivot
    cdef long long inv, f, v
    pivots = []
    out = [0] * (m * n)
    if m == 0 or n == 0:
        return out, pivots
    cdef long long* rows = _to_c(a, m * n)
    try:
        r = 0
        for c in range(n):
            if r == m:
                break
            pivot = -1
            for i in range(r, m):
                if rows[i * n + c] % p != 0:
                    pivot = i
                    break
            if pivot < 0:
                continue
            if pivot != r:
                for j in range(n):
                    v = rows[r * n + j]
                    rows[r * n + j] = rows[pivot * n + j]
                    rows[pivot * n + j] = v
            inv = _inv_mod(rows[r * n + c], p)
            for j in range(n):
                rows[r * n + j] = (rows[r * n + j] * inv) % p
            for i in range(m):
                if i != r and rows[i * n + c] != 0:
                    f = rows[i * n + c]
                    for j in range(n):
                        v = (rows[i * n + j] - f * rows[r * n + j]) % p
                        if v < 0:
                            v += p
                        rows[i * n + j] = v
            pivots.append(c)
            r += 1
        for i in range(m * n):
            out[i] = rows[i]
    finally:
        free(rows)
    return out, pivots
