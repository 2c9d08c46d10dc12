"""Pure-Python RK4 kernels.

Reference implementation of the integration loops; ``_kernels.pyx`` mirrors it
line for line. Both return plain numpy arrays so callers cannot tell which
backend ran.
"""

import math

import numpy as np

_BISECT_ITERS = 60


def _count_steps(times, dt):
    counts = []
    for j in range(len(times) - 1):
        span = times[j + 1] - times[j]
        counts.append(max(1, int(math.ceil(span / dt - 1e-9))))
    return counts


def simulate_fatigue(times, loads, mvc, k, dt, floor, stop=True):
    """Integrate capacity, fatigue index and load integral over a load profile.

    State is ``(f_cem, u, f_integral)``. Steps are aligned to profile sample
    times so the load is linear within every step. Integration stops at the
    first time the load exceeds capacity; the crossing is located by bisection
    on the RK4 sub-step length. With ``stop=False`` the crossing time is still
    reported but integration runs to the end of the profile.

    Returns ``(t, f_cem, u, f_integral, exhausted_at)`` with ``exhausted_at``
    set to NaN when the profile is held to the end.
    """
    times = [float(x) for x in times]
    loads = [float(x) for x in loads]
    counts = _count_steps(times, dt)
    size = sum(counts) + 1
    out_t = np.empty(size)
    out_c = np.empty(size)
    out_u = np.empty(size)
    out_f = np.empty(size)

    c, u, fi = mvc, 0.0, 0.0
    out_t[0], out_c[0], out_u[0], out_f[0] = 0.0, c, u, fi
    exhausted = math.nan
    if loads[0] > mvc:
        if stop:
            return out_t[:1], out_c[:1], out_u[:1], out_f[:1], 0.0
        exhausted = 0.0

    idx = 0
    for j, n in enumerate(counts):
        t_j = times[j]
        l_j = loads[j]
        slope = (loads[j + 1] - l_j) / (times[j + 1] - t_j)
        h = (times[j + 1] - t_j) / n
        for i in range(n):
            t0 = t_j + i * h
            c1, u1, f1 = _rk4_fatigue(c, u, fi, t0 - t_j, h, l_j, slope, mvc, k, floor)
            t1 = times[j + 1] if i == n - 1 else t_j + (i + 1) * h
            if math.isnan(exhausted) and c1 - (l_j + slope * (t1 - t_j)) < 0.0:
                lo, hi = 0.0, h
                for _ in range(_BISECT_ITERS):
                    mid = 0.5 * (lo + hi)
                    cm = _rk4_fatigue(c, u, fi, t0 - t_j, mid, l_j, slope, mvc, k, floor)[0]
                    if cm - (l_j + slope * (t0 + mid - t_j)) < 0.0:
                        hi = mid
                    else:
                        lo = mid
                s = 0.5 * (lo + hi)
                exhausted = t0 + s
                if stop:
                    c1, u1, f1 = _rk4_fatigue(c, u, fi, t0 - t_j, s, l_j, slope, mvc, k, floor)
                    idx += 1
                    out_t[idx], out_c[idx], out_u[idx], out_f[idx] = t0 + s, c1, u1, f1
                    end = idx + 1
                    return out_t[:end], out_c[:end], out_u[:end], out_f[:end], exhausted
            c, u, fi = c1, u1, f1
            idx += 1
            out_t[idx], out_c[idx], out_u[idx], out_f[idx] = t1, c, u, fi
    return out_t, out_c, out_u, out_f, exhausted


def _rk4_fatigue(c, u, fi, tau, h, l0, slope, mvc, k, floor):
    # tau is time since segment start; load is l0 + slope * tau
    la = l0 + slope * tau
    lm = l0 + slope * (tau + 0.5 * h)
    lb = l0 + slope * (tau + h)
    kf = k / mvc

    ca = max(c, floor)
    dc1 = -kf * ca * la
    du1 = mvc * la / (ca * ca)

    cb = max(c + 0.5 * h * dc1, floor)
    dc2 = -kf * cb * lm
    du2 = mvc * lm / (cb * cb)

    cc = max(c + 0.5 * h * dc2, floor)
    dc3 = -kf * cc * lm
    du3 = mvc * lm / (cc * cc)

    cd = max(c + h * dc3, floor)
    dc4 = -kf * cd * lb
    du4 = mvc * lb / (cd * cd)

    c_new = max(c + h / 6.0 * (dc1 + 2.0 * dc2 + 2.0 * dc3 + dc4), floor)
    u_new = u + h / 6.0 * (du1 + 2.0 * du2 + 2.0 * du3 + du4)
    f_new = fi + h / 6.0 * (la + 4.0 * lm + lb) / mvc
    return c_new, u_new, f_new


def simulate_active_motor(m0, f_rate, r_rate, b_rate, duration, dt):
    """RK4 on the three-state motor-unit system from (0, 0, m0).

    All three states are integrated explicitly (uncommitted units obey
    ``dM_uc/dt = -B M_uc``) so conservation is a property of the scheme, not
    of bookkeeping.
    """
    n = max(1, int(math.ceil(duration / dt - 1e-9)))
    h = duration / n
    out_t = np.empty(n + 1)
    out_a = np.empty(n + 1)
    out_f = np.empty(n + 1)
    out_uc = np.empty(n + 1)
    ma, mf, muc = 0.0, 0.0, float(m0)
    out_t[0], out_a[0], out_f[0], out_uc[0] = 0.0, ma, mf, muc
    for i in range(n):
        a1 = b_rate * muc - f_rate * ma + r_rate * mf
        f1 = f_rate * ma - r_rate * mf
        u1 = -b_rate * muc

        ma2, mf2, muc2 = ma + 0.5 * h * a1, mf + 0.5 * h * f1, muc + 0.5 * h * u1
        a2 = b_rate * muc2 - f_rate * ma2 + r_rate * mf2
        f2 = f_rate * ma2 - r_rate * mf2
        u2 = -b_rate * muc2

        ma3, mf3, muc3 = ma + 0.5 * h * a2, mf + 0.5 * h * f2, muc + 0.5 * h * u2
        a3 = b_rate * muc3 - f_rate * ma3 + r_rate * mf3
        f3 = f_rate * ma3 - r_rate * mf3
        u3 = -b_rate * muc3

        ma4, mf4, muc4 = ma + h * a3, mf + h * f3, muc + h * u3
        a4 = b_rate * muc4 - f_rate * ma4 + r_rate * mf4
        f4 = f_rate * ma4 - r_rate * mf4
        u4 = -b_rate * muc4

        ma += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        mf += h / 6.0 * (f1 + 2.0 * f2 + 2.0 * f3 + f4)
        muc += h / 6.0 * (u1 + 2.0 * u2 + 2.0 * u3 + u4)
        out_t[i + 1] = (i + 1) * h
        out_a[i + 1], out_f[i + 1], out_uc[i + 1] = ma, mf, muc
    return out_t, out_a, out_f, out_uc
