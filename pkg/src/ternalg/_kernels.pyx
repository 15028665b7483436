# cython: boundscheck=False, wraparound=False, initializedcheck=False, language_level=3
"""Compiled contraction kernels.

Same five functions as ``ternalg._kernels_py``; explicit C loops beat the
array machinery by a wide margin at the tiny sizes used here (n = 2..4).
"""

import numpy as np

ctypedef double complex c128


def product_p1(const c128[:, :, ::1] a, const c128[:, :, ::1] b, const c128[:, :, ::1] c):
    # out[i,j,k] = sum_{l,m,n} a[i,l,m] b[n,l,m] c[n,j,k]
    cdef Py_ssize_t n = a.shape[0]
    mid_arr = np.zeros((n, n), dtype=np.complex128)
    out_arr = np.zeros((n, n, n), dtype=np.complex128)
    cdef c128[:, ::1] mid = mid_arr
    cdef c128[:, :, ::1] out = out_arr
    cdef Py_ssize_t i, j, k, l, m, t
    cdef c128 acc
    for i in range(n):
        for t in range(n):
            acc = 0
            for l in range(n):
                for m in range(n):
                    acc = acc + a[i, l, m] * b[t, l, m]
            mid[i, t] = acc
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = 0
                for t in range(n):
                    acc = acc + mid[i, t] * c[t, j, k]
                out[i, j, k] = acc
    return out_arr


def product_p2(const c128[:, :, ::1] a, const c128[:, :, ::1] b, const c128[:, :, ::1] c):
    # out[i,j,k] = sum_{l,m,n} a[i,l,m] b[n,m,l] c[n,j,k]
    cdef Py_ssize_t n = a.shape[0]
    mid_arr = np.zeros((n, n), dtype=np.complex128)
    out_arr = np.zeros((n, n, n), dtype=np.complex128)
    cdef c128[:, ::1] mid = mid_arr
    cdef c128[:, :, ::1] out = out_arr
    cdef Py_ssize_t i, j, k, l, m, t
    cdef c128 acc
    for i in range(n):
        for t in range(n):
            acc = 0
            for l in range(n):
                for m in range(n):
                    acc = acc + a[i, l, m] * b[t, m, l]
            mid[i, t] = acc
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = 0
                for t in range(n):
                    acc = acc + mid[i, t] * c[t, j, k]
                out[i, j, k] = acc
    return out_arr


def product_p3(const c128[:, :, ::1] a, const c128[:, :, ::1] b, const c128[:, :, ::1] c):
    # out[i,j,k] = sum_{p,r,s} a[i,j,p] b[r,s,p] c[s,r,k]
    cdef Py_ssize_t n = a.shape[0]
    h_arr = np.zeros((n, n), dtype=np.complex128)
    out_arr = np.zeros((n, n, n), dtype=np.complex128)
    cdef c128[:, ::1] h = h_arr
    cdef c128[:, :, ::1] out = out_arr
    cdef Py_ssize_t i, j, k, p, r, s
    cdef c128 acc
    for p in range(n):
        for k in range(n):
            acc = 0
            for r in range(n):
                for s in range(n):
                    acc = acc + b[r, s, p] * c[s, r, k]
            h[p, k] = acc
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = 0
                for p in range(n):
                    acc = acc + a[i, j, p] * h[p, k]
                out[i, j, k] = acc
    return out_arr


def product_p4(const c128[:, :, ::1] a, const c128[:, :, ::1] b, const c128[:, :, ::1] c):
    # out[i,j,k] = sum_{p,r,s} a[i,j,p] b[r,s,p] c[r,s,k]
    cdef Py_ssize_t n = a.shape[0]
    h_arr = np.zeros((n, n), dtype=np.complex128)
    out_arr = np.zeros((n, n, n), dtype=np.complex128)
    cdef c128[:, ::1] h = h_arr
    cdef c128[:, :, ::1] out = out_arr
    cdef Py_ssize_t i, j, k, p, r, s
    cdef c128 acc
    for p in range(n):
        for k in range(n):
            acc = 0
            for r in range(n):
                for s in range(n):
                    acc = acc + b[r, s, p] * c[r, s, k]
            h[p, k] = acc
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = 0
                for p in range(n):
                    acc = acc + a[i, j, p] * h[p, k]
                out[i, j, k] = acc
    return out_arr


def scheme_product(const c128[:, :, ::1] a, const c128[:, :, ::1] b, const c128[:, :, ::1] c,
                   spec):
    """Contract three cubes by a 9-slot assignment.

    ``spec`` holds one integer per index slot (A1..A3, B1..B3, C1..C3 in
    order): values 0..2 select the output axes i, j, k and values 3..5 name
    the three summed indices.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef int q0 = spec[0], q1 = spec[1], q2 = spec[2]
    cdef int q3 = spec[3], q4 = spec[4], q5 = spec[5]
    cdef int q6 = spec[6], q7 = spec[7], q8 = spec[8]
    out_arr = np.zeros((n, n, n), dtype=np.complex128)
    cdef c128[:, :, ::1] out = out_arr
    cdef Py_ssize_t v[6]
    cdef Py_ssize_t i, j, k, l, m, t
    for i in range(n):
        v[0] = i
        for j in range(n):
            v[1] = j
            for k in range(n):
                v[2] = k
                for l in range(n):
                    v[3] = l
                    for m in range(n):
                        v[4] = m
                        for t in range(n):
                            v[5] = t
                            out[i, j, k] = out[i, j, k] + (
                                a[v[q0], v[q1], v[q2]]
                                * b[v[q3], v[q4], v[q5]]
                                * c[v[q6], v[q7], v[q8]]
                            )
    return out_arr
