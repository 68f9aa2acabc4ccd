# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot loops; see ``_kernels_py.py`` for the contracts."""

import numpy as np
cimport numpy as cnp

NAME = "cython"


def prepare_table(array):
    return np.ascontiguousarray(array, dtype=np.int32)


def prepare_vector(array):
    return np.ascontiguousarray(array, dtype=np.int32)


cdef inline bytes _empty(Py_ssize_t n):
    return bytes((n >> 3) + 1)


cdef inline object _to_int(bytearray buf):
    return int.from_bytes(buf, "little")


def closure(int[:, ::1] table, gens, int identity):
    cdef Py_ssize_t n = table.shape[0]
    cdef int[::1] gv = np.asarray(list(gens), dtype=np.int32)
    cdef Py_ssize_t ng = gv.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] queue = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t head = 0, tail = 1, j
    cdef int x, y
    queue[0] = identity
    seen[identity] = 1
    while head < tail:
        x = queue[head]
        head += 1
        for j in range(ng):
            y = table[x, gv[j]]
            if not seen[y]:
                seen[y] = 1
                queue[tail] = y
                tail += 1
    cdef bytearray out = bytearray((n >> 3) + 1)
    for j in range(tail):
        y = queue[j]
        out[y >> 3] |= 1 << (y & 7)
    return _to_int(out)


def conjugate(int[:, ::1] conj, elements, int g):
    cdef Py_ssize_t n = conj.shape[0]
    cdef bytearray out = bytearray((n >> 3) + 1)
    cdef int h, y
    for h in elements:
        y = conj[g, h]
        out[y >> 3] |= 1 << (y & 7)
    return _to_int(out)


def conjugators(int[:, ::1] conj, gens, target, candidates):
    cdef Py_ssize_t n = conj.shape[0]
    cdef bytes tb = target.to_bytes((n >> 3) + 1, "little")
    cdef const unsigned char[::1] t = tb
    cdef int[::1] gv = np.asarray(list(gens), dtype=np.int32)
    cdef Py_ssize_t ng = gv.shape[0], j
    cdef bytearray out = bytearray((n >> 3) + 1)
    cdef int g, y
    cdef bint ok
    for g in candidates:
        ok = True
        for j in range(ng):
            y = conj[g, gv[j]]
            if not (t[y >> 3] >> (y & 7)) & 1:
                ok = False
                break
        if ok:
            out[g >> 3] |= 1 << (g & 7)
    return _to_int(out)


def count_fixed_cosets(int[:, ::1] conj, int[::1] inverse, reps, gens, target):
    cdef Py_ssize_t n = conj.shape[0]
    cdef bytes tb = target.to_bytes((n >> 3) + 1, "little")
    cdef const unsigned char[::1] t = tb
    cdef int[::1] gv = np.asarray(list(gens), dtype=np.int32)
    cdef Py_ssize_t ng = gv.shape[0], j
    cdef long count = 0
    cdef int g, gi, y
    cdef bint ok
    for g in reps:
        gi = inverse[g]
        ok = True
        for j in range(ng):
            y = conj[gi, gv[j]]
            if not (t[y >> 3] >> (y & 7)) & 1:
                ok = False
                break
        if ok:
            count += 1
    return count
