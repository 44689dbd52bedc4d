# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels_py``; same signatures."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, sqrt

cnp.import_array()


cdef void _gram(const double[:, :, ::1] Y, Py_ssize_t i, Py_ssize_t j,
                double* out) noexcept nogil:
    # out[a*n + b] = Y_i[a] . Y_j[b]
    cdef Py_ssize_t n = Y.shape[1], m = Y.shape[2], a, b, k
    cdef double s
    for a in range(n):
        for b in range(n):
            s = 0.0
            for k in range(m):
                s += Y[i, a, k] * Y[j, b, k]
            out[a * n + b] = s


def chordal_sq_matrix(Y):
    cdef const double[:, :, ::1] y = np.ascontiguousarray(Y, dtype=np.float64)
    cdef Py_ssize_t N = y.shape[0], n = y.shape[1], i, j, t
    cdef cnp.ndarray[cnp.float64_t, ndim=2] D = np.zeros((N, N))
    cdef double[::1] buf = np.empty(n * n)
    cdef double s
    for i in range(N):
        for j in range(i + 1, N):
            _gram(y, i, j, &buf[0])
            s = 0.0
            for t in range(n * n):
                s += buf[t] * buf[t]
            D[i, j] = n - s
            D[j, i] = n - s
    return D


def softmin_chordal(Y, double beta):
    cdef const double[:, :, ::1] y = np.ascontiguousarray(Y, dtype=np.float64)
    cdef Py_ssize_t N = y.shape[0], n = y.shape[1], m = y.shape[2]
    cdef Py_ssize_t K = N * (N - 1) // 2
    cdef double[:, :, ::1] M = np.empty((K, n, n))
    cdef double[::1] d = np.empty(K)
    cdef cnp.ndarray[cnp.float64_t, ndim=3] G = np.zeros((N, n, m))
    cdef double[:, :, ::1] g = G
    cdef Py_ssize_t i, j, p, a, b, k, t
    cdef double s, dmin, total, w, c
    p = 0
    dmin = 1e300
    for i in range(N):
        for j in range(i + 1, N):
            _gram(y, i, j, &M[p, 0, 0])
            s = 0.0
            for t in range(n):
                for a in range(n):
                    s += M[p, t, a] * M[p, t, a]
            d[p] = n - s
            if d[p] < dmin:
                dmin = d[p]
            p += 1
    total = 0.0
    for p in range(K):
        d[p] = exp(-beta * (d[p] - dmin))
        total += d[p]
    p = 0
    for i in range(N):
        for j in range(i + 1, N):
            w = -2.0 * d[p] / total
            for a in range(n):
                for b in range(n):
                    c = w * M[p, a, b]
                    for k in range(m):
                        g[i, a, k] += c * y[j, b, k]
                        g[j, b, k] += c * y[i, a, k]
            p += 1
    return dmin - log(total) / beta, G, dmin


def project_tangent(Y, Gin):
    cdef const double[:, :, ::1] y = np.ascontiguousarray(Y, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=3] G = np.array(Gin, dtype=np.float64, order="C", copy=True)
    cdef double[:, :, ::1] g = G
    cdef const double[:, :, ::1] g0 = np.ascontiguousarray(Gin, dtype=np.float64)
    cdef Py_ssize_t N = y.shape[0], n = y.shape[1], m = y.shape[2], i, a, b, k
    cdef double c
    for i in range(N):
        for a in range(n):
            for b in range(n):
                c = 0.0
                for k in range(m):
                    c += g0[i, a, k] * y[i, b, k]
                for k in range(m):
                    g[i, a, k] -= c * y[i, b, k]
    return G


def orthonormalize_rows(Y):
    cdef cnp.ndarray[cnp.float64_t, ndim=3] Q = np.array(Y, dtype=np.float64, order="C", copy=True)
    cdef double[:, :, ::1] q = Q
    cdef Py_ssize_t N = q.shape[0], n = q.shape[1], m = q.shape[2], i, a, b, k
    cdef double s
    for i in range(N):
        for a in range(n):
            for b in range(a):
                s = 0.0
                for k in range(m):
                    s += q[i, a, k] * q[i, b, k]
                for k in range(m):
                    q[i, a, k] -= s * q[i, b, k]
            s = 0.0
            for k in range(m):
                s += q[i, a, k] * q[i, a, k]
            s = sqrt(s)
            for k in range(m):
                q[i, a, k] /= s
    return Q
