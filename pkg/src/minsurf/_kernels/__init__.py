"""Kernel backend selection.

The hot inner loops (expression evaluation inside quadrature and
point sweeps, Gauss-Seidel relaxation) live either in the compiled
Cython extension ``_core`` or in the numpy fallback ``_fallback``.
The compiled core is preferred when it imports cleanly.

Set ``MINSURF_NO_EXT=1`` to force the fallback (used by the benchmark).
"""

import os

if os.environ.get("MINSURF_NO_EXT"):
    from . import _fallback as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _fallback as _impl

BACKEND = _impl.BACKEND
eval_program = _impl.eval_program
redblack_sweep = _impl.redblack_sweep

__all__ = ["BACKEND", "eval_program", "redblack_sweep"]
