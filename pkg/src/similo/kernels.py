"""Edit-distance kernel selection.

The compiled Cython kernel is preferred; the pure-Python twin is used when
the extension was not built or when ``SIMILO_PURE_PYTHON=1`` is set (useful
for benchmarking one against the other).
"""

import os

if os.environ.get("SIMILO_PURE_PYTHON") == "1":
    from similo._kernels_py import BACKEND, levenshtein
else:
    try:
        from similo._kernels import BACKEND, levenshtein  # type: ignore[attr-defined]
    except ImportError:
        from similo._kernels_py import BACKEND, levenshtein

__all__ = ["levenshtein", "BACKEND"]
