# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled norm kernels.

Mirror of ``_kernels_py`` (same summation order, rescaling rules and
saturation thresholds); see that module for the documented contracts.
Inputs are 1-D C-contiguous float64 buffers with strictly positive entries.
"""

from libc.math cimport HUGE_VAL, exp, fabs, log, pow

NAME = "compiled"

cdef double _EXP_MAX = 709.0
cdef double _RESCALE_AT = 600.0


def norm_min(const double[::1] x):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double m = x[0]
    for i in range(1, n):
        if x[i] < m:
            m = x[i]
    return m


def norm_max(const double[::1] x):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double m = x[0]
    for i in range(1, n):
        if x[i] > m:
            m = x[i]
    return m


def dot(const double[::1] x, const double[::1] y):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double total = 0.0
    for i in range(n):
        total += x[i] * y[i]
    return total


def norm_finite(const double[::1] x, double r):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double mn, mx, scale, m, total, v
    if n == 1:
        return x[0]
    mn = x[0]
    mx = x[0]
    for i in range(1, n):
        v = x[i]
        if v < mn:
            mn = v
        if v > mx:
            mx = v
    scale = fabs(log(mx))
    v = fabs(log(mn))
    if v > scale:
        scale = v
    if fabs(r) * scale > _RESCALE_AT:
        m = mx if r > 0.0 else mn
        total = 0.0
        for i in range(n):
            total += pow(x[i] / m, r)
        if log(m) + log(total) / r > _EXP_MAX:
            return HUGE_VAL
        return m * pow(total, 1.0 / r)
    total = 0.0
    for i in range(n):
        total += pow(x[i], r)
    if log(total) / r > _EXP_MAX:
        return HUGE_VAL
    return pow(total, 1.0 / r)


def norm_weighted_finite(const double[::1] x, const double[::1] theta, double r):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double mn, mx, scale, m, total, v
    if n == 1:
        return x[0]
    mn = x[0]
    mx = x[0]
    for i in range(1, n):
        v = x[i]
        if v < mn:
            mn = v
        if v > mx:
            mx = v
    scale = fabs(log(mx))
    v = fabs(log(mn))
    if v > scale:
        scale = v
    if fabs(r) * scale > _RESCALE_AT:
        m = mx if r > 0.0 else mn
        total = 0.0
        for i in range(n):
            total += theta[i] * pow(x[i] / m, r)
        if log(m) + log(total) / r > _EXP_MAX:
            return HUGE_VAL
        return m * pow(total, 1.0 / r)
    total = 0.0
    for i in range(n):
        total += theta[i] * pow(x[i], r)
    if log(total) / r > _EXP_MAX:
        return HUGE_VAL
    return pow(total, 1.0 / r)


def norm_cobb_douglas(const double[::1] x, const double[::1] theta):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double t = 0.0
    if n == 1:
        return x[0]
    for i in range(n):
        t += theta[i] * log(x[i])
    if t > _EXP_MAX:
        return HUGE_VAL
    return exp(t)


# Log-input variants: given ln(x) they return ln of the corresponding norm
# and cannot overflow for finite inputs.  Mirrors _kernels_py.


def log_norm_finite(const double[::1] logx, double r):
    cdef Py_ssize_t i, n = logx.shape[0]
    cdef double amax, a, total
    if n == 1:
        return logx[0]
    amax = r * logx[0]
    for i in range(1, n):
        a = r * logx[i]
        if a > amax:
            amax = a
    total = 0.0
    for i in range(n):
        total += exp(r * logx[i] - amax)
    return (amax + log(total)) / r


def log_norm_weighted_finite(const double[::1] logx, const double[::1] theta, double r):
    cdef Py_ssize_t i, n = logx.shape[0]
    cdef double amax, a, total
    if n == 1:
        return logx[0]
    amax = r * logx[0]
    for i in range(1, n):
        a = r * logx[i]
        if a > amax:
            amax = a
    total = 0.0
    for i in range(n):
        total += theta[i] * exp(r * logx[i] - amax)
    return (amax + log(total)) / r


def log_norm_cobb_douglas(const double[::1] logx, const double[::1] theta):
    cdef Py_ssize_t i, n = logx.shape[0]
    cdef double t = 0.0
    if n == 1:
        return logx[0]
    for i in range(n):
        t += theta[i] * logx[i]
    return t
