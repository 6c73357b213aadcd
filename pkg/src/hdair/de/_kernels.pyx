# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled DE kernels; mirrors ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, log1p, fabs

cnp.import_array()


cdef double _f_one(double x, double ps, const double[:] P, const double[:] Pbar,
                   const double[:] logc) noexcept nogil:
    cdef Py_ssize_t m = logc.shape[0] - 1
    cdef Py_ssize_t i
    cdef double lx, l1x, acc = 0.0
    if x <= 0.0:
        return ps * P[0] + (1.0 - ps) * Pbar[0]
    if x >= 1.0:
        return ps * P[m] + (1.0 - ps) * Pbar[m]
    lx = log(x)
    l1x = log1p(-x)
    for i in range(m + 1):
        acc += exp(logc[i] + i * lx + (m - i) * l1x) * (ps * P[i] + (1.0 - ps) * Pbar[i])
    return acc


def f_eval(xs, double ps, const double[:] P, const double[:] Pbar, const double[:] logc):
    cdef const double[:] xv = np.ascontiguousarray(xs, dtype=np.float64).reshape(-1)
    cdef Py_ssize_t n = xv.shape[0], r
    out = np.empty(n)
    cdef double[:] ov = out
    with nogil:
        for r in range(n):
            ov[r] = _f_one(xv[r], ps, P, Pbar, logc)
    return out


cdef double _step(double[:] x, double[:] fc, double[:] new, Py_ssize_t lo, Py_ssize_t hi,
                  Py_ssize_t w, double ps, const double[:] P, const double[:] Pbar,
                  const double[:] logc) noexcept nogil:
    cdef Py_ssize_t L = x.shape[0]
    cdef Py_ssize_t k0 = lo - w + 1, k, j, l, pos
    cdef double s, diff = 0.0, d
    for k in range(k0, hi):
        s = 0.0
        for j in range(w):
            pos = k + j
            if 0 <= pos < L:
                s += x[pos]
        fc[k - k0] = _f_one(s / w, ps, P, Pbar, logc)
    for pos in range(lo, hi):
        s = 0.0
        for l in range(w):
            s += fc[pos - l - k0]
        new[pos - lo] = s / w
    for pos in range(lo, hi):
        d = fabs(new[pos - lo] - x[pos])
        if d > diff:
            diff = d
        x[pos] = new[pos - lo]
    return diff


def sc_step(double[:] x, Py_ssize_t lo, Py_ssize_t hi, Py_ssize_t w, double ps,
            const double[:] P, const double[:] Pbar, const double[:] logc):
    cdef double[:] fc = np.empty(hi - lo + w)
    cdef double[:] new = np.empty(max(hi - lo, 1))
    cdef double diff
    with nogil:
        diff = _step(x, fc, new, lo, hi, w, ps, P, Pbar, logc)
    return diff


def sc_run(double[:] x, Py_ssize_t lo, Py_ssize_t hi, Py_ssize_t w, double ps,
           const double[:] P, const double[:] Pbar, const double[:] logc,
           long max_iters, double tol):
    cdef double[:] fc = np.empty(hi - lo + w)
    cdef double[:] new = np.empty(max(hi - lo, 1))
    cdef long it = 0
    with nogil:
        while it < max_iters:
            it += 1
            if _step(x, fc, new, lo, hi, w, ps, P, Pbar, logc) < tol:
                break
    return it
