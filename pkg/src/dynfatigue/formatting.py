"""Fixed numeric formatting for every file the package writes."""

import math


def fmt(x) -> str:
    """Six significant digits; ``-0`` folds to ``0`` so output is byte-stable."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    s = f"{x:.6g}"
    return "0" if s in ("-0", "0") else s
