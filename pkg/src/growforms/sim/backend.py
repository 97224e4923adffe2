"""Force-kernel backend selection.

The compiled Cython kernel is used when the extension built; otherwise the
numpy fallback. GROWFORMS_BACKEND=python|cython forces a choice (cython
raises if the extension is unavailable).
"""

from __future__ import annotations

import os

from . import forces_py

_requested = os.environ.get("GROWFORMS_BACKEND", "").lower()

if _requested == "python":
    BACKEND = "python"
    spring_repulsion_forces = forces_py.spring_repulsion_forces
else:
    try:
        from . import _kernels
        BACKEND = "cython"
        spring_repulsion_forces = _kernels.spring_repulsion_forces
    except ImportError:
        if _requested == "cython":
            raise
        BACKEND = "python"
        spring_repulsion_forces = forces_py.spring_repulsion_forces
