"""Kernel selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python module with the same functions is used. Set ``ACTLAB_PURE=1`` to
force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("ACTLAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py

monoid_tables = _impl.monoid_tables
canonical_table = _impl.canonical_table
action_tables = _impl.action_tables
canonical_action = _impl.canonical_action
homs = _impl.homs
closure = _impl.closure
right_congruences = _impl.right_congruences
