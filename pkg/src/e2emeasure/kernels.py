"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the pure-Python
twin is loaded. Set ``E2EMEASURE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from array import array
from typing import Iterable

from . import _pykernels

if os.environ.get("E2EMEASURE_PURE_PYTHON"):
    _backend = _pykernels
else:
    try:
        from . import _ckernels as _backend  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on build
        _backend = _pykernels

BACKEND = "compiled" if _backend is not _pykernels else "python"

distance = _backend.distance
prefix_distances = _backend.prefix_distances
distance_matrix = _backend.distance_matrix
edit_counts = _backend.edit_counts
best_substring_distances = _backend.best_substring_distances


def encode(symbols: Iterable[int]) -> array:
    """Pack symbol ids into a contiguous int buffer both backends accept."""
    return array("i", symbols)
