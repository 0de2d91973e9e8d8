"""Backend selection for the hot loops.

The compiled ``_kernels`` extension is used when it imports; otherwise, or
when ``PHI3FORMS_PURE`` is set to a non-empty value, the pure-Python
``_pykernels`` module is used.  Both produce identical results.
"""
from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("PHI3FORMS_PURE"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

sieve_chunk = _impl.sieve_chunk
anchor_pairs = _impl.anchor_pairs

__all__ = ["BACKEND", "sieve_chunk", "anchor_pairs"]
