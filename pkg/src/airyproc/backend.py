"""Backend selection for the hot numerical kernels.

Two interchangeable implementations of the Airy evaluator and the kernel
matrix assembly exist: a numba @njit one and a pure-numpy one.  The active
backend is chosen once at import from the environment variable
``AIRYPROC_BACKEND`` (``"numba"`` or ``"numpy"``); it falls back to numpy
automatically when numba is not importable.  ``set_backend`` allows switching
at runtime (used by the benchmark and the equivalence tests).
"""

import os

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

_VALID = ("numba", "numpy")


def _initial_backend() -> str:
    choice = os.environ.get("AIRYPROC_BACKEND", "").strip().lower()
    if choice in _VALID:
        if choice == "numba" and not HAS_NUMBA:
            return "numpy"
        return choice
    return "numba" if HAS_NUMBA else "numpy"


_active = _initial_backend()


def active_backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in _VALID:
        raise ValueError(f"unknown backend {name!r}; expected one of {_VALID}")
    if name == "numba" and not HAS_NUMBA:
        raise ValueError("numba backend requested but numba is not installed")
    _active = name
