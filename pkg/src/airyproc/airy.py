"""Airy function Ai and its first derivative on the real line.

Near machine precision relative to the local envelope; the second derivative
comes for free from the defining equation Ai''(x) = x Ai(x).  Accuracy is
guaranteed on [-30, 30]; outside that window the asymptotic branches keep
working (they only get more accurate to the left of -30 and underflow
gracefully far to the right).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _airy_numpy, backend
from .errors import DomainError

__all__ = ["AiryPair", "ai_pair", "ai", "ai_prime", "ai_second", "ai_values"]


@dataclass(frozen=True)
class AiryPair:
    """Value of Ai and Ai' at one point; ai_second derives from the ODE."""

    x: float
    ai: float
    ai_prime: float

    @property
    def ai_second(self) -> float:
        return self.x * self.ai


def _check_finite(x) -> None:
    if not np.all(np.isfinite(x)):
        raise DomainError("airy: argument must be finite")


def ai_values(x):
    """Vectorized (Ai, Ai') for an array-like of finite reals."""
    arr = np.asarray(x, dtype=float)
    _check_finite(arr)
    if backend.active_backend() == "numba":
        from . import _airy_numba

        return _airy_numba.ai_arrays(arr)
    return _airy_numpy.ai_arrays(arr)


def ai_pair(x: float) -> AiryPair:
    """Ai and Ai' at a single finite real point."""
    xf = float(x)
    if not math.isfinite(xf):
        raise DomainError("airy: argument must be finite")
    if backend.active_backend() == "numba":
        from . import _airy_numba

        a, p = _airy_numba.ai_scalar(xf)
    else:
        a, p = _airy_numpy.ai_arrays(np.array([xf]))
        a, p = a[0], p[0]
    return AiryPair(x=xf, ai=float(a), ai_prime=float(p))


def ai(x: float) -> float:
    return ai_pair(x).ai


def ai_prime(x: float) -> float:
    return ai_pair(x).ai_prime


def ai_second(x: float) -> float:
    """Ai''(x) = x Ai(x), exact consequence of the Airy equation."""
    return ai_pair(x).ai_second
