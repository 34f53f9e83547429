"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the numpy
implementation is loaded. Setting ``CGHZ_PURE_PYTHON=1`` forces the
fallback. Both backends expose the same in-place functions:
``apply_h``, ``apply_x``, ``apply_z``, ``apply_cnot``, ``prob_one`` and
``collapse``.
"""

import os

from . import _pykernels

python_backend = _pykernels

try:
    from . import _ckernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and os.environ.get("CGHZ_PURE_PYTHON", "") in ("", "0"):
    backend = compiled_backend
    BACKEND = "cython"
else:
    backend = python_backend
    BACKEND = "python"

apply_h = backend.apply_h
apply_x = backend.apply_x
apply_z = backend.apply_z
apply_cnot = backend.apply_cnot
prob_one = backend.prob_one
collapse = backend.collapse

__all__ = [
    "BACKEND",
    "apply_h",
    "apply_x",
    "apply_z",
    "apply_cnot",
    "prob_one",
    "collapse",
    "compiled_backend",
    "python_backend",
]
