# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels for the trio search.

Same contract as ``_kernels_py``: 36-angle Givens parametrization of U(6)
and the trio unbiasedness penalty.  These run inside the innermost loop of
the multistart simplex search, where the numpy version's per-call overhead
dominates.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()

N = 6
N_ANGLES = 36

cdef double INV_SQRT6 = 1.0 / sqrt(6.0)

cdef int PAIR_J[15]
cdef int PAIR_K[15]
cdef int _p = 0
cdef int _j, _k
for _j in range(6):
    for _k in range(_j + 1, 6):
        PAIR_J[_p] = _j
        PAIR_K[_p] = _k
        _p += 1


cdef void _fill_unitary(const double[::1] angles, double complex[:, ::1] u) noexcept:
    cdef int i, j, k, p
    cdef double c, s
    cdef double complex ph, zj, zk
    for i in range(6):
        for j in range(6):
            u[i, j] = 1.0 if i == j else 0.0
    for p in range(15):
        j = PAIR_J[p]
        k = PAIR_K[p]
        c = cos(angles[p])
        s = sin(angles[p])
        ph = cos(angles[15 + p]) + 1j * sin(angles[15 + p])
        for i in range(6):
            zj = u[i, j]
            zk = u[i, k]
            u[i, j] = zj * c + zk * (s * ph)
            u[i, k] = zj * (-s * ph.conjugate()) + zk * c
    for i in range(6):
        ph = cos(angles[30 + i]) + 1j * sin(angles[30 + i])
        for j in range(6):
            u[i, j] = u[i, j] * ph


def unitary_from_angles(angles):
    """Build a 6x6 unitary from 36 real angle coordinates."""
    cdef cnp.ndarray[double, ndim=1] a = np.ascontiguousarray(angles, dtype=np.float64)
    if a.shape[0] != 36:
        raise ValueError(f"expected 36 angles, got shape ({a.shape[0]},)")
    cdef cnp.ndarray[double complex, ndim=2] u = np.empty((6, 6), dtype=np.complex128)
    _fill_unitary(a, u)
    return u


cdef double _pair_penalty(double complex[:, ::1] a, double complex[:, ::1] b) noexcept:
    # sum_jk (|a^dag b|_jk - 1/sqrt6)^2
    cdef int j, k, i
    cdef double complex acc
    cdef double dev, pen = 0.0
    for j in range(6):
        for k in range(6):
            acc = 0.0
            for i in range(6):
                acc = acc + a[i, j].conjugate() * b[i, k]
            dev = abs(acc) - INV_SQRT6
            pen += dev * dev
    return pen


cdef double _entry_penalty(double complex[:, ::1] b) noexcept:
    cdef int j, k
    cdef double dev, pen = 0.0
    for j in range(6):
        for k in range(6):
            dev = abs(b[j, k]) - INV_SQRT6
            pen += dev * dev
    return pen


def trio_penalty_angles(m, angles2, angles3):
    """Unbiasedness penalty for a candidate pair completing ``m`` to a trio."""
    cdef cnp.ndarray[double complex, ndim=2] mc = np.ascontiguousarray(m, dtype=np.complex128)
    if mc.shape[0] != 6 or mc.shape[1] != 6:
        raise ValueError("m must be 6x6")
    cdef cnp.ndarray[double, ndim=1] a2 = np.ascontiguousarray(angles2, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] a3 = np.ascontiguousarray(angles3, dtype=np.float64)
    if a2.shape[0] != 36 or a3.shape[0] != 36:
        raise ValueError("expected 36 angles per candidate")
    cdef cnp.ndarray[double complex, ndim=2] b2 = np.empty((6, 6), dtype=np.complex128)
    cdef cnp.ndarray[double complex, ndim=2] b3 = np.empty((6, 6), dtype=np.complex128)
    _fill_unitary(a2, b2)
    _fill_unitary(a3, b3)
    cdef double pen = 0.0
    pen += _pair_penalty(mc, b2)
    pen += _pair_penalty(mc, b3)
    pen += _pair_penalty(b2, b3)
    pen += _entry_penalty(b2)
    pen += _entry_penalty(b3)
    return pen
