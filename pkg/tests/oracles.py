"""Independent reference computations used only by the tests.

Everything here is written straight from the definitions with plain loops, so
it shares no code path with the package.
"""

import math


def pearson_bruteforce(a, b):
    n = len(a)
    ma = math.fsum(a) / n
    mb = math.fsum(b) / n
    num = math.fsum((x - ma) * (y - mb) for x, y in zip(a, b))
    saa = math.fsum((x - ma) ** 2 for x in a)
    sbb = math.fsum((y - mb) ** 2 for y in b)
    return num / math.sqrt(saa * sbb)


def icc_bruteforce(a, b):
    n, p = len(a), 2
    rows = [(x + y) / 2.0 for x, y in zip(a, b)]
    grand = math.fsum(list(a) + list(b)) / (n * p)
    ms_between = p * math.fsum((r - grand) ** 2 for r in rows) / (n - 1)
    ms_within = math.fsum((x - r) ** 2 + (y - r) ** 2 for x, y, r in zip(a, b, rows)) / (n * (p - 1))
    return (ms_between - ms_within) / (ms_between + (p - 1) * ms_within)


def random_profile(rng, mvc, max_fraction=0.9):
    """Random piecewise-linear profile with loads in [0, max_fraction * mvc]."""
    n = int(rng.integers(2, 10))
    steps = rng.uniform(0.05, 0.6, n - 1)
    times = [0.0]
    for s in steps:
        times.append(times[-1] + float(s))
    loads = list(rng.uniform(0.0, max_fraction * mvc, n))
    return times, loads
