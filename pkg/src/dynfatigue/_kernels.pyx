# cython: language_level=3
"""Compiled RK4 kernels; same contract as ``_kernels_py``."""

from libc.math cimport ceil, NAN

import numpy as np

cdef int _BISECT_ITERS = 60


cdef inline double _fmax(double a, double b) nogil:
    return a if a > b else b


cdef inline void _rk4_fatigue(double c, double u, double fi, double tau, double h,
                              double l0, double slope, double mvc, double k,
                              double floor, double* out) nogil:
    cdef double la = l0 + slope * tau
    cdef double lm = l0 + slope * (tau + 0.5 * h)
    cdef double lb = l0 + slope * (tau + h)
    cdef double kf = k / mvc
    cdef double ca, cb, cc, cd, dc1, dc2, dc3, dc4, du1, du2, du3, du4

    ca = _fmax(c, floor)
    dc1 = -kf * ca * la
    du1 = mvc * la / (ca * ca)

    cb = _fmax(c + 0.5 * h * dc1, floor)
    dc2 = -kf * cb * lm
    du2 = mvc * lm / (cb * cb)

    cc = _fmax(c + 0.5 * h * dc2, floor)
    dc3 = -kf * cc * lm
    du3 = mvc * lm / (cc * cc)

    cd = _fmax(c + h * dc3, floor)
    dc4 = -kf * cd * lb
    du4 = mvc * lb / (cd * cd)

    out[0] = _fmax(c + h / 6.0 * (dc1 + 2.0 * dc2 + 2.0 * dc3 + dc4), floor)
    out[1] = u + h / 6.0 * (du1 + 2.0 * du2 + 2.0 * du3 + du4)
    out[2] = fi + h / 6.0 * (la + 4.0 * lm + lb) / mvc


def simulate_fatigue(times, loads, double mvc, double k, double dt, double floor, bint stop=True):
    cdef const double[::1] tv = np.ascontiguousarray(times, dtype=np.float64)
    cdef const double[::1] lv = np.ascontiguousarray(loads, dtype=np.float64)
    cdef Py_ssize_t nseg = tv.shape[0] - 1
    cdef Py_ssize_t j, i, n, idx = 0, size = 1, it
    cdef Py_ssize_t[::1] counts = np.empty(nseg, dtype=np.intp)
    cdef double span, t_j, l_j, slope, h, t0, t1, lo, hi, mid, s
    cdef double c, u, fi
    cdef double exhausted = NAN
    cdef bint crossed = False
    cdef double st[3]

    for j in range(nseg):
        span = tv[j + 1] - tv[j]
        n = <Py_ssize_t>ceil(span / dt - 1e-9)
        if n < 1:
            n = 1
        counts[j] = n
        size += n

    out_t_a = np.empty(size)
    out_c_a = np.empty(size)
    out_u_a = np.empty(size)
    out_f_a = np.empty(size)
    cdef double[::1] out_t = out_t_a
    cdef double[::1] out_c = out_c_a
    cdef double[::1] out_u = out_u_a
    cdef double[::1] out_f = out_f_a

    c = mvc
    u = 0.0
    fi = 0.0
    out_t[0] = 0.0
    out_c[0] = c
    out_u[0] = u
    out_f[0] = fi
    if lv[0] > mvc:
        if stop:
            return out_t_a[:1], out_c_a[:1], out_u_a[:1], out_f_a[:1], 0.0
        exhausted = 0.0
        crossed = True

    for j in range(nseg):
        t_j = tv[j]
        l_j = lv[j]
        slope = (lv[j + 1] - l_j) / (tv[j + 1] - t_j)
        n = counts[j]
        h = (tv[j + 1] - t_j) / n
        for i in range(n):
            t0 = t_j + i * h
            _rk4_fatigue(c, u, fi, t0 - t_j, h, l_j, slope, mvc, k, floor, st)
            if i == n - 1:
                t1 = tv[j + 1]
            else:
                t1 = t_j + (i + 1) * h
            if not crossed and st[0] - (l_j + slope * (t1 - t_j)) < 0.0:
                lo = 0.0
                hi = h
                for it in range(_BISECT_ITERS):
                    mid = 0.5 * (lo + hi)
                    _rk4_fatigue(c, u, fi, t0 - t_j, mid, l_j, slope, mvc, k, floor, st)
                    if st[0] - (l_j + slope * (t0 + mid - t_j)) < 0.0:
                        hi = mid
                    else:
                        lo = mid
                s = 0.5 * (lo + hi)
                exhausted = t0 + s
                crossed = True
                _rk4_fatigue(c, u, fi, t0 - t_j, s, l_j, slope, mvc, k, floor, st)
                if stop:
                    idx += 1
                    out_t[idx] = t0 + s
                    out_c[idx] = st[0]
                    out_u[idx] = st[1]
                    out_f[idx] = st[2]
                    return (out_t_a[:idx + 1], out_c_a[:idx + 1], out_u_a[:idx + 1],
                            out_f_a[:idx + 1], exhausted)
                _rk4_fatigue(c, u, fi, t0 - t_j, h, l_j, slope, mvc, k, floor, st)
            c = st[0]
            u = st[1]
            fi = st[2]
            idx += 1
            out_t[idx] = t1
            out_c[idx] = c
            out_u[idx] = u
            out_f[idx] = fi
    return out_t_a, out_c_a, out_u_a, out_f_a, exhausted


def simulate_active_motor(double m0, double f_rate, double r_rate, double b_rate,
                          double duration, double dt):
    cdef Py_ssize_t n = <Py_ssize_t>ceil(duration / dt - 1e-9)
    if n < 1:
        n = 1
    cdef double h = duration / n
    out_t_a = np.empty(n + 1)
    out_a_a = np.empty(n + 1)
    out_f_a = np.empty(n + 1)
    out_uc_a = np.empty(n + 1)
    cdef double[::1] out_t = out_t_a
    cdef double[::1] out_a = out_a_a
    cdef double[::1] out_f = out_f_a
    cdef double[::1] out_uc = out_uc_a
    cdef double ma = 0.0, mf = 0.0, muc = m0
    cdef double a1, a2, a3, a4, f1, f2, f3, f4, u1, u2, u3, u4
    cdef double ma2, mf2, muc2, ma3, mf3, muc3, ma4, mf4, muc4
    cdef Py_ssize_t i

    out_t[0] = 0.0
    out_a[0] = ma
    out_f[0] = mf
    out_uc[0] = muc
    with nogil:
        for i in range(n):
            a1 = b_rate * muc - f_rate * ma + r_rate * mf
            f1 = f_rate * ma - r_rate * mf
            u1 = -b_rate * muc

            ma2 = ma + 0.5 * h * a1
            mf2 = mf + 0.5 * h * f1
            muc2 = muc + 0.5 * h * u1
            a2 = b_rate * muc2 - f_rate * ma2 + r_rate * mf2
            f2 = f_rate * ma2 - r_rate * mf2
            u2 = -b_rate * muc2

            ma3 = ma + 0.5 * h * a2
            mf3 = mf + 0.5 * h * f2
            muc3 = muc + 0.5 * h * u2
            a3 = b_rate * muc3 - f_rate * ma3 + r_rate * mf3
            f3 = f_rate * ma3 - r_rate * mf3
            u3 = -b_rate * muc3

            ma4 = ma + h * a3
            mf4 = mf + h * f3
            muc4 = muc + h * u3
            a4 = b_rate * muc4 - f_rate * ma4 + r_rate * mf4
            f4 = f_rate * ma4 - r_rate * mf4
            u4 = -b_rate * muc4

            ma = ma + h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
            mf = mf + h / 6.0 * (f1 + 2.0 * f2 + 2.0 * f3 + f4)
            muc = muc + h / 6.0 * (u1 + 2.0 * u2 + 2.0 * u3 + u4)
            out_t[i + 1] = (i + 1) * h
            out_a[i + 1] = ma
            out_f[i + 1] = mf
            out_uc[i + 1] = muc
    return out_t_a, out_a_a, out_f_a, out_uc_a
