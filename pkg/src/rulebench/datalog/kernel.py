"""Join-kernel selection.

Prefers the compiled extension when it imported cleanly; falls back to the
pure-Python executor. RULEBENCH_PURE=1 forces the fallback, which is also
how the kernel-comparison benchmark pins each side.
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("RULEBENCH_PURE"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

execute_plan = _impl.execute_plan
COMPILED: bool = bool(getattr(_impl, "COMPILED", False))


def kernels() -> dict[str, object]:
    """Available kernels by name; 'ext' is present only when compiled."""
    table = {"py": _kernel_py.execute_plan}
    if COMPILED:
        table["ext"] = _impl.execute_plan
    return table


def get_kernel(name: str | None):
    """Resolve a kernel name ('py', 'ext', 'auto'/None) to an executor."""
    if name in (None, "auto"):
        return execute_plan
    try:
        return kernels()[name]
    except KeyError:
        raise ValueError(f"unknown kernel {name!r}") from None
