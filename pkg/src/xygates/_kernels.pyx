# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled XY-pulse kernel.

Rotates amplitude pairs in place for every column of a (2**n, m) complex
buffer. Same contract as ``_kernels_py.apply_pulse_inplace``.
"""
from libc.math cimport cos, sin


cdef inline Py_ssize_t _insert_zero(Py_ssize_t k, Py_ssize_t mask) nogil:
    # open a zero bit at position ``mask`` in k
    return ((k & ~(mask - 1)) << 1) | (k & (mask - 1))


def apply_pulse_inplace(double complex[:, ::1] buf, int n, int i, int j, double phi):
    cdef Py_ssize_t m = buf.shape[1]
    cdef Py_ssize_t mi = (<Py_ssize_t>1) << (n - 1 - i)
    cdef Py_ssize_t mj = (<Py_ssize_t>1) << (n - 1 - j)
    cdef Py_ssize_t lo = mi if mi < mj else mj
    cdef Py_ssize_t hi = mj if mi < mj else mi
    cdef Py_ssize_t quarter = buf.shape[0] >> 2
    cdef double c = cos(phi)
    cdef double s = sin(phi)
    cdef Py_ssize_t k, base, src, dst, col
    cdef double ar, ai, br, bi
    cdef double *p
    cdef double *q
    with nogil:
        for k in range(quarter):
            # base has bits i and j both clear; src sets only j, dst only i
            base = _insert_zero(_insert_zero(k, lo), hi)
            src = base | mj
            dst = base | mi
            p = <double *>&buf[src, 0]
            q = <double *>&buf[dst, 0]
            for col in range(m):
                ar = p[2 * col]
                ai = p[2 * col + 1]
                br = q[2 * col]
                bi = q[2 * col + 1]
                # (c a + i s b, c b + i s a)
                p[2 * col] = c * ar - s * bi
                p[2 * col + 1] = c * ai + s * br
                q[2 * col] = c * br - s * ai
                q[2 * col + 1] = c * bi + s * ar
