"""Select the kernel implementation at import time.

The compiled ``_ckernels`` module is used when it was built; otherwise the
pure-Python ``_pykernels`` twin. Set ``COMPDISTINCT_PURE_PYTHON=1`` to force
the fallback.
"""
import os

from . import _pykernels

python_kernels = _pykernels

try:
    from . import _ckernels as compiled_kernels
except ImportError:
    compiled_kernels = None

if compiled_kernels is not None and not os.environ.get("COMPDISTINCT_PURE_PYTHON"):
    kernels = compiled_kernels
else:
    kernels = _pykernels

BACKEND = kernels.BACKEND
