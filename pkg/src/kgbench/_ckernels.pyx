# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; semantics identical to _kernels_py."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, cosh, sinh, cos, sin

cnp.import_array()

cdef double BLOWUP = 1e8


def second_difference(const double[::1] u, double inv_h2):
    cdef Py_ssize_t n = u.shape[0], j
    out = np.empty(n)
    cdef double[::1] o = out
    o[0] = (u[1] - 2.0 * u[0] + u[n - 1]) * inv_h2
    for j in range(1, n - 1):
        o[j] = (u[j + 1] - 2.0 * u[j] + u[j - 1]) * inv_h2
    o[n - 1] = (u[0] - 2.0 * u[n - 1] + u[n - 2]) * inv_h2
    return out


def lffd_run(u_prev, u_curr, long nsteps, double a, double b, double c):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] A = np.array(u_prev, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] B = np.array(u_curr, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] C = np.empty(A.shape[0])
    cdef double* up = <double*> A.data
    cdef double* uc = <double*> B.data
    cdef double* un = <double*> C.data
    cdef double* tmp
    cdef Py_ssize_t n = A.shape[0], j, jp, jm
    cdef long k, done = nsteps
    cdef double x, y, diag = 2.0 - 2.0 * a - b
    cdef bint blown = False
    with nogil:
        for k in range(nsteps):
            for j in range(n):
                jp = j + 1 if j + 1 < n else 0
                jm = j - 1 if j > 0 else n - 1
                x = uc[j]
                y = diag * x - up[j] + a * (uc[jp] + uc[jm]) - c * x * x * x
                un[j] = y
                if not fabs(y) <= BLOWUP:
                    blown = True
            tmp = up
            up = uc
            uc = un
            un = tmp
            if blown:
                done = k + 1
                break
    arrs = {<size_t> A.data: A, <size_t> B.data: B, <size_t> C.data: C}
    return arrs[<size_t> up].copy(), arrs[<size_t> uc].copy(), done, blown


def cubic_kick(double[::1] v, const double[::1] u, double c):
    cdef Py_ssize_t j
    cdef double x
    for j in range(v.shape[0]):
        x = u[j]
        v[j] -= c * x * x * x
    return np.asarray(v)


def li2_potential(const double[::1] zr0, const double[::1] zi0,
                  const double[::1] zr1, const double[::1] zi1,
                  double[::1] alpha, double[::1] beta,
                  const double complex[::1] chi0, const double complex[::1] chi1,
                  double tau, double lam):
    cdef Py_ssize_t j
    cdef double k = -0.75 * lam * tau, h = 0.5 * tau
    cdef double m11, m12, m21, s2, s, cc, ff, a1, b1
    for j in range(alpha.shape[0]):
        m11 = k * (2 * zr0[j] * zi0[j] + 2 * zr1[j] * zi1[j])
        m12 = k * (zr0[j] * zr0[j] + 3 * zi0[j] * zi0[j] + zr1[j] * zr1[j] + 3 * zi1[j] * zi1[j])
        m21 = k * (-3 * zr0[j] * zr0[j] - zi0[j] * zi0[j] - 3 * zr1[j] * zr1[j] - zi1[j] * zi1[j])
        s2 = m11 * m11 + m12 * m21
        s = sqrt(fabs(s2))
        if s < 1e-6:
            cc = 1.0 + 0.5 * s2
            ff = 1.0 + s2 / 6.0
        elif s2 > 0:
            cc = cosh(s)
            ff = sinh(s) / s
        else:
            cc = cos(s)
            ff = sin(s) / s
        a1 = alpha[j] + h * chi0[j].imag
        b1 = beta[j] - h * chi0[j].real
        alpha[j] = cc * a1 + ff * (m11 * a1 + m12 * b1) + h * chi1[j].imag
        beta[j] = cc * b1 + ff * (m21 * a1 - m11 * b1) - h * chi1[j].real
    return np.asarray(alpha), np.asarray(beta)
