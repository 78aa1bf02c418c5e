"""Gauss-Legendre rules and their mapping to truncated semi-infinite intervals.

All operators in the package live on (s, oo); the superexponential decay of
the Airy kernel to the right lets us truncate at s + L and apply a single
Gauss-Legendre rule there.  Grids are immutable and freely shareable.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigurationError

__all__ = ["QuadratureGrid", "gauss_legendre", "semi_infinite_grid", "default_cutoff"]

MAX_NODES = 512
SUPPORTED_S = (-8.0, 8.0)


@dataclass(frozen=True)
class QuadratureGrid:
    """Nodes/weights on (s, s+L); the left endpoint carries the indicator of the domain."""

    s: float
    L: float
    n: int
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def sqrt_weights(self) -> np.ndarray:
        return np.sqrt(self.weights)

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


@lru_cache(maxsize=64)
def _reference_rule(n: int):
    if n == 1:
        return np.zeros(1), np.full(1, 2.0)
    # Newton iteration on P_n from the Tricomi initial guess.
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # enforce the exact symmetry of the rule
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    order = np.argsort(x)
    x = x[order]
    w = w[order]
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n: int):
    """Reference n-point rule on [-1, 1]: exact through polynomial degree 2n-1."""
    if not (1 <= int(n) <= MAX_NODES):
        raise ConfigurationError(f"quadrature: node count {n} outside [1, {MAX_NODES}]")
    x, w = _reference_rule(int(n))
    return x.copy(), w.copy()


def default_cutoff(s: float, base: float = 16.0) -> float:
    """Cutoff length so the rule covers the oscillatory stretch (s, 0) plus a decay pad."""
    return base + max(0.0, -s)


def semi_infinite_grid(s: float, L: float, n: int) -> QuadratureGrid:
    """Affine image of the reference rule on (s, s+L)."""
    if not np.isfinite(s) or not np.isfinite(L):
        raise ConfigurationError("quadrature: s and L must be finite")
    if L <= 0:
        raise ConfigurationError(f"quadrature: cutoff L={L} must be positive")
    x, w = gauss_legendre(n)
    nodes = s + 0.5 * L * (x + 1.0)
    weights = 0.5 * L * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureGrid(s=float(s), L=float(L), n=int(n), nodes=nodes, weights=weights)
