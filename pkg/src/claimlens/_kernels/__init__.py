"""Scoring kernel selection: compiled extension when importable, pure numpy
otherwise.

Set ``CLAIMLENS_PURE_KERNELS=1`` to force the fallback (used by the benchmark
and by tests that compare the two backends).
"""

from __future__ import annotations

import os

from . import pure

try:
    from . import _native
except ImportError:
    _native = None

_force_pure = os.environ.get("CLAIMLENS_PURE_KERNELS", "") == "1"

if _native is not None and not _force_pure:
    BACKEND = "native"
    accumulate_scores = _native.accumulate_scores
else:
    BACKEND = "pure"
    accumulate_scores = pure.accumulate_scores

native_available = _native is not None

__all__ = ["BACKEND", "accumulate_scores", "native_available", "pure"]
