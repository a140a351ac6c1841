"""Kernel backend selection.

The compiled Cython core is preferred; the numpy fallback takes over when
the extension is missing or when CONSTANCY_KERNELS=fallback is set in the
environment.  Both backends are stream-compatible: given the same inputs
they return bit-identical results.
"""

import os

from . import fallback

try:
    from . import _core as compiled
except ImportError:
    compiled = None

if compiled is None or os.environ.get("CONSTANCY_KERNELS", "") == "fallback":
    active = fallback
    BACKEND = "fallback"
else:
    active = compiled
    BACKEND = "compiled"

fwht_inplace = active.fwht_inplace
classical_verdicts = active.classical_verdicts
quantum_verdicts = active.quantum_verdicts
