"""Backend selection for the frame optimizer.

The compiled Cython module is used when it was built; otherwise the
pure-Python twin with the identical algorithm is loaded.
"""

from __future__ import annotations

from . import _frame_kernel_py

try:
    from . import _frame_kernel as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _frame_kernel_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

KIND_FRAME = _frame_kernel_py.KIND_FRAME
KIND_SINGLE = _frame_kernel_py.KIND_SINGLE

_active = "compiled" if _compiled is not None else "python"


def backend_name() -> str:
    return _active


def use_backend(name: str) -> None:
    """Switch the process-wide backend ('compiled' or 'python')."""
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; choose from {sorted(BACKENDS)}")
    _active = name


def get(name: str | None = None):
    return BACKENDS[name or _active]
