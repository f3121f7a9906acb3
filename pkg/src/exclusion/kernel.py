"""Scan primitives with a compiled fast lane and a pure fallback.

The compiled extension is used when it imported cleanly and the
EXCLUSION_PURE_PYTHON environment variable is not set to 1; otherwise the
numpy implementation serves.  IMPLEMENTATION names the active lane.
Team enumeration and packing are shared; only the hot scans differ.
"""

from __future__ import annotations

import os

from ._kernel_py import MAX_PACK_ROWS, enumerate_packed

if os.environ.get("EXCLUSION_PURE_PYTHON") == "1":
    _impl = None
else:
    try:
        from . import _kernel as _impl
    except ImportError:
        _impl = None

if _impl is not None:
    conflict_words = _impl.conflict_words
    any_counterexample = _impl.any_counterexample
    IMPLEMENTATION = "cython"
else:
    from ._kernel_py import any_counterexample, conflict_words

    IMPLEMENTATION = "python"

__all__ = [
    "IMPLEMENTATION",
    "MAX_PACK_ROWS",
    "any_counterexample",
    "conflict_words",
    "enumerate_packed",
]
