"""Kernel backend selection.

The compiled extension is preferred; set ``TWOCHOICES_BACKEND=python`` to
force the numpy fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

python = _pykernels

if os.environ.get("TWOCHOICES_BACKEND", "").lower() == "python":
    compiled = None
    impl = _pykernels
else:
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None
    impl = compiled if compiled is not None else _pykernels

BACKEND = "cython" if impl is not _pykernels else "python"

seed_key = impl.seed_key
two_choices_round = impl.two_choices_round
simulate_batch = impl.simulate_batch
peel = impl.peel
