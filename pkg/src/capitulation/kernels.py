"""Backend selection for the class-number kernels.

The compiled extension is preferred.  Setting ``CAPITULATION_PURE_PYTHON=1``
forces the pure-Python fallback, which is also used when the extension was
not built.
"""

from __future__ import annotations

import os

from . import _kernels_py as python_impl

if os.environ.get("CAPITULATION_PURE_PYTHON"):
    _impl = python_impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = python_impl

BACKEND = "python" if _impl is python_impl else "cython"

count_reduced_forms = _impl.count_reduced_forms
class_number_analytic = _impl.class_number_analytic
count_form_cycles = _impl.count_form_cycles
real_log_sin_sum = _impl.real_log_sin_sum

__all__ = [
    "BACKEND",
    "class_number_analytic",
    "count_form_cycles",
    "count_reduced_forms",
    "python_impl",
    "real_log_sin_sum",
]
