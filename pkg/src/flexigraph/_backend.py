"""Import-time selection of the kernel implementation.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module. Setting ``FLEXIGRAPH_PURE=1`` forces the
fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels


def _load() -> tuple[ModuleType, str]:
    if os.environ.get("FLEXIGRAPH_PURE", "") not in ("", "0"):
        return _pykernels, "python"
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        return _pykernels, "python"
    return _ckernels, "cython"


kernels, name = _load()


def use(which: str) -> None:
    """Switch backends at runtime (``"cython"`` or ``"python"``)."""
    global kernels, name
    if which == "python":
        kernels, name = _pykernels, "python"
    elif which == "cython":
        from . import _ckernels  # type: ignore[attr-defined]

        kernels, name = _ckernels, "cython"
    else:
        raise ValueError(which)
