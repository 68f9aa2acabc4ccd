"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. ``MARKSMITH_KERNELS=python`` forces the fallback.
"""

from __future__ import annotations

import os

from marksmith import _kernels_py

backend = _kernels_py

if os.environ.get("MARKSMITH_KERNELS", "").lower() != "python":
    try:
        from marksmith import _kernels as backend  # type: ignore[no-redef]
    except ImportError:  # extension not built
        backend = _kernels_py


def available() -> list[str]:
    names = ["python"]
    try:
        from marksmith import _kernels  # noqa: F401
    except ImportError:
        return names
    return names + ["cython"]


def use(name: str) -> None:
    """Switch backend at runtime; groups re-prepare their tables lazily per backend."""
    global backend
    if name == "python":
        backend = _kernels_py
    elif name == "cython":
        from marksmith import _kernels

        backend = _kernels
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
