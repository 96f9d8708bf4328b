"""Select the compiled kernels when available, else the pure-Python twin.

Set ``BEZKNOT_PURE_PYTHON=1`` to force the fallback (used by the benchmark and
the backend-equivalence tests).
"""

import os

from . import _kernels_py

if os.environ.get("BEZKNOT_PURE_PYTHON") == "1":
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        kernels = _kernels_py

COMPILED = kernels is not _kernels_py
