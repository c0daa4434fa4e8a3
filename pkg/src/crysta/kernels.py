"""Backend selection for the hot kernels.

The compiled extension is used when importable; ``CRYSTA_PURE=1`` forces the
pure-Python twin.  Callers go through the module-level names so that
:func:`use_backend` takes effect everywhere.
"""
from __future__ import annotations

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_NAMES = ("residue_labels", "canonical_code", "cycle_count", "search_tail")


def available_backends():
    return ["compiled", "python"] if _ckernels is not None else ["python"]


def use_backend(name):
    """Switch every kernel to ``"compiled"`` or ``"python"``."""
    global BACKEND
    if name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        mod = _ckernels
    elif name == "python":
        mod = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    g = globals()
    for attr in _NAMES:
        g[attr] = getattr(mod, attr)
    BACKEND = name


BACKEND = "python"
use_backend("compiled" if _ckernels is not None and not os.environ.get("CRYSTA_PURE") else "python")
