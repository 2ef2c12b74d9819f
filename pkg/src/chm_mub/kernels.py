"""Backend selection for the search hot kernels.

The compiled Cython module is used when it imported cleanly; otherwise the
numpy fallback takes over.  Set ``CHM_MUB_NO_EXT=1`` to force the fallback
(useful for the backend-equivalence tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("CHM_MUB_NO_EXT"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

N_ANGLES = _kernels_py.N_ANGLES

unitary_from_angles = _impl.unitary_from_angles
trio_penalty_angles = _impl.trio_penalty_angles


def backends() -> dict[str, object]:
    """All importable kernel backends, keyed by name (for benchmarks/tests)."""
    found: dict[str, object] = {"python": _kernels_py}
    try:
        from . import _kernels

        found["cython"] = _kernels
    except ImportError:
        pass
    return found
