"""Pointwise kernels: the Airy kernel K and the two finite-t off-diagonal blocks.

K is evaluated through the closed form

    K(x, y) = (Ai(x) Ai'(y) - Ai'(x) Ai(y)) / (x - y)

with a second-order Taylor form about the diagonal where x - y is small
enough to lose digits to cancellation.  The two damped blocks

    upper(x, y; t) =  int_0^oo  e^{-zt} Ai(x+z) Ai(y+z) dz
    lower(x, y; t) = -int_0^oo  e^{-zt} Ai(x-z) Ai(y-z) dz

are integrated on fixed-length Gauss-Legendre panels; the first unit panel is
subdivided geometrically once t > 4 so the e^{-zt} boundary layer stays
resolved, and the truncation depth combines the damping bound with the
superexponential Airy decay (upper block only; the lower block oscillates and
relies on damping alone).
"""

from dataclasses import dataclass

import numpy as np

from .airy import ai_values
from .errors import DomainError, UnsupportedParameterError
from .quadrature import gauss_legendre

__all__ = [
    "RankOneTerm",
    "airy_kernel",
    "airy_kernel_matrix",
    "offdiag_upper",
    "offdiag_lower",
    "offdiag_upper_matrix",
    "offdiag_lower_matrix",
    "expansion_blocks",
    "expansion_value",
    "T_MIN_UPPER",
    "T_MIN_LOWER",
]

T_MIN_UPPER = 0.5
T_MIN_LOWER = 1.0
NEAR_DIAGONAL = 1e-4
LOWER_DEPTH = 40.0
PANEL_NODES = 16


# ---------------------------------------------------------------------------
# Airy kernel


def airy_kernel_matrix(x, y):
    """K(x_i, y_j) for node vectors x, y."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    ax, apx = ai_values(x)
    ay, apy = ai_values(y)
    dx = x[:, None] - y[None, :]
    num = ax[:, None] * apy[None, :] - apx[:, None] * ay[None, :]
    near = np.abs(dx) < NEAR_DIAGONAL
    out = np.divide(num, dx, out=np.zeros_like(num), where=~near)
    if near.any():
        ii, jj = np.nonzero(near)
        m = 0.5 * (x[ii] + y[jj])
        am, apm = ai_values(m)
        diag = apm * apm - m * am * am
        curv = (m * apm * apm + 0.5 * am * apm - m * m * am * am) / 6.0
        d = dx[ii, jj]
        out[ii, jj] = diag + curv * d * d
    return out


def airy_kernel(x: float, y: float) -> float:
    """K(x, y) = int_0^oo Ai(x+z) Ai(y+z) dz via the closed form."""
    if not (np.isfinite(x) and np.isfinite(y)):
        raise DomainError("kernel: arguments must be finite")
    return float(airy_kernel_matrix(np.array([x]), np.array([y]))[0, 0])


# ---------------------------------------------------------------------------
# z-quadrature for the damped blocks


def _panel_breaks(depth: float, t: float, panel_len: float) -> np.ndarray:
    """0 = b_0 < ... < b_m = depth; geometric refinement of the first panel for large t."""
    breaks = [0.0]
    first = min(panel_len, depth)
    if t > 4.0:
        b = 4.0 / t
        while b < first:
            breaks.append(b)
            b *= 2.0
    k = 1
    while k * panel_len < depth - 1e-12:
        breaks.append(k * panel_len)
        k += 1
    breaks.append(depth)
    return np.array(breaks)


def _z_rule(depth: float, t: float, panel_len: float, nodes_per_panel: int):
    breaks = _panel_breaks(depth, t, panel_len)
    xr, wr = gauss_legendre(nodes_per_panel)
    half = 0.5 * np.diff(breaks)
    mid = 0.5 * (breaks[:-1] + breaks[1:])
    z = (mid[:, None] + half[:, None] * xr[None, :]).ravel()
    w = (half[:, None] * wr[None, :]).ravel()
    return z, w


def _upper_depth(t: float, xmin: float) -> float:
    decay = 10.0 + max(0.0, -xmin)  # both Airy arguments >= 10 beyond this
    return max(min(40.0 / t, decay), 1e-3)


def offdiag_upper_matrix(x, y, t: float, panel_len: float = 1.0, nodes_per_panel: int = PANEL_NODES):
    """Upper-block kernel values on the node grid x (rows) times y (columns)."""
    if t < T_MIN_UPPER:
        raise UnsupportedParameterError(f"kernel: upper block needs t >= {T_MIN_UPPER}, got {t}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    depth = _upper_depth(t, min(x.min(), y.min()))
    z, w = _z_rule(depth, t, panel_len, nodes_per_panel)
    damped = w * np.exp(-t * z)
    ax, _ = ai_values(x[:, None] + z[None, :])
    ay, _ = ai_values(y[:, None] + z[None, :])
    return (ax * damped[None, :]) @ ay.T


def offdiag_lower_matrix(x, y, t: float, panel_len: float = 1.0, nodes_per_panel: int = PANEL_NODES):
    """Lower-block kernel values (note the overall minus sign)."""
    if t < T_MIN_LOWER:
        raise UnsupportedParameterError(f"kernel: lower block needs t >= {T_MIN_LOWER}, got {t}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    depth = max(LOWER_DEPTH, 30.0 / t)
    z, w = _z_rule(depth, t, panel_len, nodes_per_panel)
    damped = w * np.exp(-t * z)
    ax, _ = ai_values(x[:, None] - z[None, :])
    ay, _ = ai_values(y[:, None] - z[None, :])
    return -(ax * damped[None, :]) @ ay.T


def offdiag_upper(x: float, y: float, t: float, panel_len: float = 1.0, nodes_per_panel: int = PANEL_NODES) -> float:
    if not (np.isfinite(x) and np.isfinite(y)):
        raise DomainError("kernel: arguments must be finite")
    return float(offdiag_upper_matrix(np.array([x]), np.array([y]), t, panel_len, nodes_per_panel)[0, 0])


def offdiag_lower(x: float, y: float, t: float, panel_len: float = 1.0, nodes_per_panel: int = PANEL_NODES) -> float:
    if not (np.isfinite(x) and np.isfinite(y)):
        raise DomainError("kernel: arguments must be finite")
    return float(offdiag_lower_matrix(np.array([x]), np.array([y]), t, panel_len, nodes_per_panel)[0, 0])


# ---------------------------------------------------------------------------
# rank-one terms of the large-t expansion of the blocks


@dataclass(frozen=True)
class RankOneTerm:
    """One signed term c * f (x) g(y) at order t^{-order}."""

    order: int
    coefficient: float
    left: str
    right: str


_DERIV_ORDER = {"A": 0, "Ap": 1, "App": 2, "Q": 0, "P": 1, "Q1": 2}

_UPPER_TERMS = (
    RankOneTerm(1, 1.0, "A", "A"),
    RankOneTerm(2, 1.0, "Ap", "A"),
    RankOneTerm(2, 1.0, "A", "Ap"),
    RankOneTerm(3, 1.0, "App", "A"),
    RankOneTerm(3, 2.0, "Ap", "Ap"),
    RankOneTerm(3, 1.0, "A", "App"),
)

# lower block alternates sign with the order: (-, +, -)
_LOWER_TERMS = tuple(
    RankOneTerm(t.order, -t.coefficient if t.order % 2 else t.coefficient, t.left, t.right)
    for t in _UPPER_TERMS
)


def expansion_blocks(order_max: int = 3):
    """Signed rank-one terms of both blocks through order t^{-order_max}."""
    if order_max not in (1, 2, 3):
        raise DomainError(f"kernel: expansion order {order_max} not in {{1,2,3}}")
    return {
        "upper": tuple(t for t in _UPPER_TERMS if t.order <= order_max),
        "lower": tuple(t for t in _LOWER_TERMS if t.order <= order_max),
    }


def _factor(tag: str, x: float) -> float:
    a, ap = ai_values(np.array([x]))
    if tag == "A":
        return float(a[0])
    if tag == "Ap":
        return float(ap[0])
    if tag == "App":
        return float(x * a[0])
    raise DomainError(f"kernel: factor tag {tag!r} has no pointwise value")


def expansion_value(x: float, y: float, t: float, order_max: int = 3, block: str = "upper") -> float:
    """Partial sum of the rank-one expansion of one block at the point (x, y)."""
    terms = expansion_blocks(order_max)[block]
    return sum(term.coefficient * t ** (-term.order) * _factor(term.left, x) * _factor(term.right, y) for term in terms)


def derivative_orders(term: RankOneTerm):
    return _DERIV_ORDER[term.left], _DERIV_ORDER[term.right]
