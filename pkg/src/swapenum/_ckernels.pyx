# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``."""
import numpy as np
from libc.math cimport sqrt


cdef void _fwht_d(double[::1] v) noexcept nogil:
    cdef Py_ssize_t size = v.shape[0]
    cdef Py_ssize_t h = 1, i, j
    cdef double a, b
    while h < size:
        i = 0
        while i < size:
            for j in range(i, i + h):
                a = v[j]
                b = v[j + h]
                v[j] = a + b
                v[j + h] = a - b
            i += 2 * h
        h *= 2


cdef void _fwht_c(double complex[::1] v) noexcept nogil:
    cdef Py_ssize_t size = v.shape[0]
    cdef Py_ssize_t h = 1, i, j
    cdef double complex a, b
    while h < size:
        i = 0
        while i < size:
            for j in range(i, i + h):
                a = v[j]
                b = v[j + h]
                v[j] = a + b
                v[j + h] = a - b
            i += 2 * h
        h *= 2


def fwht(values):
    v = np.array(values, dtype=np.result_type(values, np.float64), copy=True)
    size = v.shape[0]
    if size & (size - 1):
        raise ValueError("length must be a power of two")
    if np.iscomplexobj(v):
        v = np.ascontiguousarray(v, dtype=np.complex128)
        _fwht_c(v)
    else:
        v = np.ascontiguousarray(v, dtype=np.float64)
        _fwht_d(v)
    return v


def apply_hadamard(double complex[::1] state, Py_ssize_t stride):
    cdef Py_ssize_t size = state.shape[0]
    cdef Py_ssize_t i, j
    cdef double s = sqrt(0.5)
    cdef double complex a, b
    with nogil:
        i = 0
        while i < size:
            for j in range(i, i + stride):
                a = state[j]
                b = state[j + stride]
                state[j] = (a + b) * s
                state[j + stride] = (a - b) * s
            i += 2 * stride


def apply_cswap(double complex[::1] state, Py_ssize_t control_stride,
                Py_ssize_t stride_b, Py_ssize_t stride_c, Py_ssize_t d):
    cdef Py_ssize_t size = state.shape[0]
    cdef Py_ssize_t idx, b, c, dst
    cdef double complex tmp
    with nogil:
        for idx in range(size):
            if (idx // control_stride) % 2 == 0:
                continue
            b = (idx // stride_b) % d
            c = (idx // stride_c) % d
            if b < c:
                dst = idx + (c - b) * stride_b - (c - b) * stride_c
                tmp = state[idx]
                state[idx] = state[dst]
                state[dst] = tmp


cdef inline int _popcount(Py_ssize_t v) noexcept nogil:
    cdef int c = 0
    while v:
        v &= v - 1
        c += 1
    return c


def pauli_weight_sums(rho_in, int n):
    cdef double complex[:, ::1] rho = np.ascontiguousarray(rho_in, dtype=np.complex128)
    # row-major copy of the transpose keeps both inner-loop reads on one row
    cdef double complex[:, ::1] rho_t = np.ascontiguousarray(rho.T)
    cdef Py_ssize_t dim = 1 << n
    cdef Py_ssize_t x, a, c, z
    cdef double complex[::1] v = np.empty(dim, dtype=np.complex128)
    cdef double complex[::1] w = np.empty(dim, dtype=np.complex128)
    A_arr = np.zeros(n + 1)
    B_arr = np.zeros(n + 1)
    cdef double[::1] A = A_arr
    cdef double[::1] B = B_arr
    cdef double complex* row_x
    cdef double complex* row_t
    cdef double complex* wp = &w[0]
    cdef Py_ssize_t ax
    cdef int wt
    with nogil:
        for x in range(dim):
            for a in range(dim):
                v[a] = rho[a, a ^ x]
                w[a] = 0
            for a in range(dim):
                ax = a ^ x
                row_x = &rho[ax, 0]
                row_t = &rho_t[a, 0]
                for c in range(dim):
                    # m[a, b] = rho[a^x, b^x] * rho[b, a] with b = a^c
                    wp[c] = wp[c] + row_x[ax ^ c] * row_t[a ^ c]
            _fwht_c(v)
            _fwht_c(w)
            for z in range(dim):
                wt = _popcount(x | z)
                A[wt] += v[z].real * v[z].real + v[z].imag * v[z].imag
                B[wt] += w[z].real
    return A_arr, B_arr
