"""Kernel backend selection.

Prefers the compiled Cython extension and falls back to the numpy
implementation when the extension is not built.  Set ARBCYCLES_BACKEND=numpy
to force the fallback (used by the benchmark and the parity tests).
"""

import os

if os.environ.get("ARBCYCLES_BACKEND", "").lower() in ("numpy", "python"):
    from . import _minplus_py as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _minplus as _impl

        BACKEND = "cython"
    except ImportError:
        from . import _minplus_py as _impl

        BACKEND = "numpy"

min_plus = _impl.min_plus
min_plus_witness = _impl.min_plus_witness
floyd_warshall = _impl.floyd_warshall
