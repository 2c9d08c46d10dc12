"""Backend selection for the integration kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module takes over. Set ``DYNFATIGUE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("DYNFATIGUE_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

simulate_fatigue = _impl.simulate_fatigue
simulate_active_motor = _impl.simulate_active_motor


def available_backends():
    """Map backend name to kernel module for every backend that imports."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels  # type: ignore[attr-defined]

        found["cython"] = _kernels
    except ImportError:
        pass
    return found
