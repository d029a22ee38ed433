"""Kernel backend selection.

The compiled ``_speedups`` module is used when it was built and
``BRAMBLEKIT_PURE`` is not set; otherwise the pure-Python ``_pure`` module.
"""

import os

from bramblekit import _pure

FOUND = _pure.FOUND
INFEASIBLE = _pure.INFEASIBLE
CAP_EXCEEDED = _pure.CAP_EXCEEDED

_impl = _pure
if os.environ.get("BRAMBLEKIT_PURE", "") not in ("1", "true", "yes"):
    try:
        from bramblekit import _speedups as _impl
    except ImportError:  # extension not built
        _impl = _pure

BACKEND = "python" if _impl is _pure else "cython"

max_flow = _impl.max_flow
ddp_search = _impl.ddp_search
