"""Select the GF(p) kernel implementation at import time.

The compiled extension is preferred; set ``THINREP_PURE_PYTHON=1`` to force
the pure-Python fallback.  Rational arithmetic always runs in Python.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from types import ModuleType

from . import _kernels_py as python_kernels

try:
    from . import _kernels as compiled_kernels  # type: ignore[attr-defined]
except ImportError:  # extension not built
    compiled_kernels = None

active: ModuleType = python_kernels
if compiled_kernels is not None and not os.environ.get("THINREP_PURE_PYTHON"):
    active = compiled_kernels


def available() -> list[str]:
    return ["python"] + (["compiled"] if compiled_kernels is not None else [])


def set_backend(name: str) -> None:
    global active
    if name == "python":
        active = python_kernels
    elif name == "compiled":
        if compiled_kernels is None:
            raise RuntimeError("compiled kernels are not built")
        active = compiled_kernels
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextmanager
def use_backend(name: str):
    global active
    saved = active
    set_backend(name)
    try:
        yield
    finally:
        active = saved
