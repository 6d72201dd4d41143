"""Kernel selection: compiled extension if importable, else the pure twin.

Set TROPLIN_PURE_PYTHON=1 to force the fallback (used by the benchmark and
by the kernel-equivalence tests).
"""

import os

if os.environ.get("TROPLIN_PURE_PYTHON"):
    from . import _core_py as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _core_py as _impl

BACKEND: str = _impl.BACKEND
exchange_violation = _impl.exchange_violation
transversal_basis_masks = _impl.transversal_basis_masks
