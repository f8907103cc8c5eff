"""Kernel backend selection.

The compiled Cython backend is used when its extension is importable; the
pure Python/numpy backend is the fallback.  Set DUALEMBED_BACKEND=python or
=compiled to force a choice (the latter raises if the extension is missing).
"""

import os

from . import pyback

try:
    from . import _speedups as _compiled
except ImportError:
    _compiled = None

_forced = os.environ.get("DUALEMBED_BACKEND", "")
if _forced == "python":
    _active = pyback
elif _forced == "compiled":
    if _compiled is None:
        raise ImportError("DUALEMBED_BACKEND=compiled but the extension is not built")
    _active = _compiled
elif _forced:
    raise ImportError(f"unknown DUALEMBED_BACKEND value {_forced!r}")
else:
    _active = _compiled if _compiled is not None else pyback

BACKEND = _active.NAME

search_embedding = _active.search_embedding
assoc_violation = _active.assoc_violation
rel_anti_sweep = _active.rel_anti_sweep
eta_mult_sweep = _active.eta_mult_sweep
emonoid_table = _active.emonoid_table


def available_backends():
    out = {"python": pyback}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out
