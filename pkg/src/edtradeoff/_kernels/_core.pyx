# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Semantics mirror ``_fallback`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport log, cos, sin, INFINITY

cnp.import_array()


cdef inline double _kl_term(double p, double r) noexcept nogil:
    if p <= 0.0:
        return 0.0
    if r <= 0.0:
        return INFINITY
    return p * log(p / r)


def partition_scan(ok_in):
    cdef cnp.uint8_t[:, :] ok = np.ascontiguousarray(ok_in, dtype=np.uint8)
    cdef Py_ssize_t d = ok.shape[0]
    cdef Py_ssize_t nb = d - 1
    cdef Py_ssize_t n = (<Py_ssize_t>1) << nb
    valid_arr = np.zeros(n, dtype=np.uint8)
    coarse_arr = np.zeros(n, dtype=np.uint8)
    g_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[:] valid = valid_arr
    cdef cnp.uint8_t[:] coarse = coarse_arr
    cdef cnp.uint8_t[:] g = g_arr
    cdef Py_ssize_t m, k, start
    cdef int good, dom
    with nogil:
        for m in range(n):
            good = 1
            start = 0
            for k in range(nb):
                if (m >> k) & 1:
                    if not ok[start, k]:
                        good = 0
                        break
                    start = k + 1
            if good and not ok[start, d - 1]:
                good = 0
            valid[m] = good
            # submasks are smaller integers, so g is final for them already
            dom = 0
            for k in range(nb):
                if (m >> k) & 1 and g[m ^ ((<Py_ssize_t>1) << k)]:
                    dom = 1
                    break
            g[m] = good or dom
            coarse[m] = good and not dom
    return valid_arr, coarse_arr


cdef void _sort_desc(double* x, Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double key
    for i in range(1, d):
        key = x[i]
        j = i - 1
        while j >= 0 and x[j] < key:
            x[j + 1] = x[j]
            j -= 1
        x[j + 1] = key


def sorted_err_dis(p_sorted, q_sorted, Pp_in, Qt_in):
    cdef double[:] p = np.ascontiguousarray(p_sorted, dtype=np.float64)
    cdef double[:] q = np.ascontiguousarray(q_sorted, dtype=np.float64)
    cdef double[:, :] Pp = np.array(Pp_in, dtype=np.float64, order="C")
    cdef double[:, :] Qt = np.array(Qt_in, dtype=np.float64, order="C")
    cdef Py_ssize_t n = Pp.shape[0], d = Pp.shape[1], r, i
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[:] out = out_arr
    cdef double a, b
    with nogil:
        for r in range(n):
            _sort_desc(&Pp[r, 0], d)
            _sort_desc(&Qt[r, 0], d)
            a = 0.0
            b = 0.0
            for i in range(d):
                a += _kl_term(p[i], Pp[r, i])
                b += _kl_term(q[i], Qt[r, i])
            if a < 0.0:
                a = 0.0
            if b < 0.0:
                b = 0.0
            out[r] = a + b
    return out_arr


def qubit_err_dis(rho, frame_a, basis_b, alpha_in, beta_in, p_sorted, q_sorted):
    A = np.asarray(frame_a, dtype=complex)
    rA_arr = np.ascontiguousarray(A.conj().T @ np.asarray(rho, dtype=complex) @ A)
    BA_arr = np.ascontiguousarray(A.conj().T @ np.asarray(basis_b, dtype=complex))
    cdef double complex[:, :] rA = rA_arr
    cdef double complex[:, :] BA = BA_arr
    cdef double[:] alpha = np.ascontiguousarray(alpha_in, dtype=np.float64)
    cdef double[:] beta = np.ascontiguousarray(beta_in, dtype=np.float64)
    cdef double p0 = p_sorted[0], p1 = p_sorted[1], q0 = q_sorted[0], q1 = q_sorted[1]
    cdef Py_ssize_t n = alpha.shape[0], r
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[:] out = out_arr
    cdef double c, s, pp0, pp1, t0, t1, tmp, o
    cdef double complex e, v00, v10, v01, v11, w
    with nogil:
        for r in range(n):
            c = cos(0.5 * alpha[r])
            s = sin(0.5 * alpha[r])
            e = cos(beta[r]) + 1j * sin(beta[r])
            v00 = c
            v10 = s * e
            v01 = -s * e.conjugate()
            v11 = c
            pp0 = (v00.conjugate() * (rA[0, 0] * v00 + rA[0, 1] * v10)
                   + v10.conjugate() * (rA[1, 0] * v00 + rA[1, 1] * v10)).real
            pp1 = (v01.conjugate() * (rA[0, 0] * v01 + rA[0, 1] * v11)
                   + v11.conjugate() * (rA[1, 0] * v01 + rA[1, 1] * v11)).real
            w = BA[0, 0].conjugate() * v00 + BA[1, 0].conjugate() * v10
            o = (w * w.conjugate()).real
            t0 = pp0 * o
            w = BA[0, 0].conjugate() * v01 + BA[1, 0].conjugate() * v11
            o = (w * w.conjugate()).real
            t0 += pp1 * o
            w = BA[0, 1].conjugate() * v00 + BA[1, 1].conjugate() * v10
            o = (w * w.conjugate()).real
            t1 = pp0 * o
            w = BA[0, 1].conjugate() * v01 + BA[1, 1].conjugate() * v11
            o = (w * w.conjugate()).real
            t1 += pp1 * o
            if pp1 > pp0:
                tmp = pp0; pp0 = pp1; pp1 = tmp
            if t1 > t0:
                tmp = t0; t0 = t1; t1 = tmp
            c = _kl_term(p0, pp0) + _kl_term(p1, pp1)
            s = _kl_term(q0, t0) + _kl_term(q1, t1)
            if c < 0.0:
                c = 0.0
            if s < 0.0:
                s = 0.0
            out[r] = c + s
    return out_arr


def s1_qubit_grid(double p1, double q1, Py_ssize_t n):
    cdef Py_ssize_t i, j
    cdef double x, y, hx, hy, fx, val
    cdef double best = INFINITY, bx = np.nan, by = np.nan
    fy_arr = np.empty(n + 1, dtype=np.float64)
    hy_arr = np.empty(n + 1, dtype=np.float64)
    cdef double[:] fy = fy_arr
    cdef double[:] hyv = hy_arr
    with nogil:
        for j in range(n + 1):
            y = <double>j / n
            fy[j] = _kl_term(q1, y) + _kl_term(1.0 - q1, 1.0 - y)
            hyv[j] = y if y > 1.0 - y else 1.0 - y
        for i in range(n + 1):
            x = <double>i / n
            fx = _kl_term(p1, x) + _kl_term(1.0 - p1, 1.0 - x)
            hx = x if x > 1.0 - x else 1.0 - x
            for j in range(n + 1):
                if hx >= hyv[j] - 1e-15:
                    val = fx + fy[j]
                    if val < best:
                        best = val
                        bx = x
                        by = <double>j / n
    return best, bx, by
