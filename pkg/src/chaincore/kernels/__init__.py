"""Backend selection for the hot loops.

Numba is used when importable unless ``CHAINCORE_NO_NUMBA`` is set to a
truthy value, in which case the numpy twins in ``_numpy`` run instead. Both
backends expose identical functions and must return identical results.
"""

import os

from . import _numpy as numpy_backend

CHAINRANK, ZEROCORE, RANDOM, MAXDEG = 0, 1, 2, 3
LARGEST_T, SMALLEST_T, UNIFORM_T = 0, 1, 2

_disabled = os.environ.get("CHAINCORE_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

numba_backend = None
if not _disabled:
    try:
        from . import _numba as numba_backend
    except ImportError:  # pragma: no cover - numba is a declared dependency
        numba_backend = None

active = numba_backend if numba_backend is not None else numpy_backend
BACKEND = "numba" if active is numba_backend else "numpy"

local_update = active.local_update
sweep_once = active.sweep_once
worklist_run = active.worklist_run
girth = active.girth
relay_walk = active.relay_walk
longest_paths = active.longest_paths
