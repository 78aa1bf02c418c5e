"""Nystrom discretization of the two-time block operator and its determinants.

The block operator on (s1, oo) x (s2, oo) is discretized with symmetric
weighting  m_ij = sqrt(w_i) k(x_i, x_j) sqrt(w_j), so the diagonal blocks are
symmetric and determinants are grid-similarity invariant.  Besides the direct
2n x 2n determinant this module computes the factored form

    det(I - M) = det(I - D11) det(I - D22) det(I - M12 M21),
    M12 = (I - D11)^{-1} B12,   M21 = (I - D22)^{-1} B21,

an exact matrix identity used as a cross-check, plus the resolvent vectors
Q, P, Q1 (images of Ai, Ai', Ai'') and their inner products u, v, w, u1.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .airy import ai_values
from .errors import ConfigurationError, SingularityError, UnsupportedParameterError
from .kernels import airy_kernel_matrix, offdiag_lower_matrix, offdiag_upper_matrix
from .quadrature import SUPPORTED_S, QuadratureGrid, default_cutoff, semi_infinite_grid

__all__ = [
    "BlockKernelMatrix",
    "ResolventData",
    "assemble",
    "f2_det",
    "joint_det",
    "factored_joint_det",
    "resolvent_quantities",
    "trace_t12_t21",
    "trace_t12_t21_squared",
    "DEFAULT_NODES",
]

logger = logging.getLogger(__name__)

DEFAULT_NODES = 120
T_MIN = 1.0
RCOND_FLAG = 1e-10


def _check_s(s: float) -> None:
    lo, hi = SUPPORTED_S
    if not (lo <= s <= hi):
        raise ConfigurationError(f"fredholm: s={s} outside supported range [{lo}, {hi}]")


def _grid(s: float, n: int, L, base: float = 16.0) -> QuadratureGrid:
    _check_s(s)
    return semi_infinite_grid(s, default_cutoff(s, base) if L is None else L, n)


def _weighted_kernel(grid1: QuadratureGrid, grid2: QuadratureGrid, raw: np.ndarray) -> np.ndarray:
    return grid1.sqrt_weights[:, None] * raw * grid2.sqrt_weights[None, :]


@dataclass(frozen=True)
class BlockKernelMatrix:
    """Discretized 2x2 block operator at (s1, s2, t)."""

    grid1: QuadratureGrid
    grid2: QuadratureGrid
    t: float
    D11: np.ndarray
    D22: np.ndarray
    B12: np.ndarray
    B21: np.ndarray

    def full(self) -> np.ndarray:
        return np.block([[self.D11, self.B12], [self.B21, self.D22]])

    def spectral_radii(self):
        return (
            float(np.max(np.abs(np.linalg.eigvalsh(self.D11)))),
            float(np.max(np.abs(np.linalg.eigvalsh(self.D22)))),
        )


@dataclass(frozen=True)
class ResolventData:
    """Resolvent vectors on the grid nodes and their quadrature inner products.

    v and u1 each have two defining inner products; both are kept so that the
    agreement of the two forms can be checked.  q_end is the Nystrom
    interpolant of Q evaluated at the left endpoint x = s.
    """

    s: float
    grid: QuadratureGrid
    Q: np.ndarray
    P: np.ndarray
    Q1: np.ndarray
    u: float
    v: float
    w: float
    u1: float
    v_alt: float
    u1_alt: float
    q_end: float


def assemble(s1: float, s2: float, t: float, n: int = DEFAULT_NODES, L=None, base: float = 16.0) -> BlockKernelMatrix:
    """Nystrom matrices of the block operator; raises on unsupported parameters."""
    if t < T_MIN:
        raise UnsupportedParameterError(f"fredholm: t={t} below supported minimum {T_MIN}")
    g1 = _grid(s1, n, L, base)
    g2 = _grid(s2, n, L, base)
    d11 = _weighted_kernel(g1, g1, airy_kernel_matrix(g1.nodes, g1.nodes))
    d22 = (
        d11
        if s1 == s2 and g1.L == g2.L
        else _weighted_kernel(g2, g2, airy_kernel_matrix(g2.nodes, g2.nodes))
    )
    b12 = _weighted_kernel(g1, g2, offdiag_upper_matrix(g1.nodes, g2.nodes, t))
    b21 = _weighted_kernel(g2, g1, offdiag_lower_matrix(g2.nodes, g1.nodes, t))
    return BlockKernelMatrix(grid1=g1, grid2=g2, t=float(t), D11=d11, D22=d22, B12=b12, B21=b21)


def _det_i_minus(mat: np.ndarray, what: str) -> float:
    n = mat.shape[0]
    sign, logdet = np.linalg.slogdet(np.eye(n) - mat)
    if sign <= 0:
        raise SingularityError(f"fredholm: det(I - {what}) is not positive")
    return float(np.exp(logdet))


def _solve_i_minus(mat: np.ndarray, rhs: np.ndarray, what: str) -> np.ndarray:
    a = np.eye(mat.shape[0]) - mat
    try:
        lu, piv = sla.lu_factor(a)
    except sla.LinAlgError as exc:  # pragma: no cover - should not happen, radius < 1
        raise SingularityError(f"fredholm: factorization of I - {what} failed") from exc
    rcond = _rcond_estimate(a, lu)
    if rcond < RCOND_FLAG:
        logger.warning("fredholm: I - %s poorly conditioned (rcond ~ %.2e)", what, rcond)
    return sla.lu_solve((lu, piv), rhs)


def _rcond_estimate(a: np.ndarray, lu: np.ndarray) -> float:
    anorm = np.linalg.norm(a, 1)
    rcond, info = sla.lapack.dgecon(lu, anorm, norm="1")
    return float(rcond) if info == 0 else 0.0


def f2_det(s: float, n: int = DEFAULT_NODES, L=None, base: float = 16.0) -> float:
    """Tracy-Widom F2(s) as det(I - K) restricted to (s, s+L)."""
    g = _grid(s, n, L, base)
    d = _weighted_kernel(g, g, airy_kernel_matrix(g.nodes, g.nodes))
    return _det_i_minus(d, "D")


def joint_det(s1: float, s2: float, t: float, n: int = DEFAULT_NODES, L=None, base: float = 16.0) -> float:
    """Two-time probability as the direct determinant of the 2n x 2n block matrix."""
    blocks = assemble(s1, s2, t, n, L, base)
    return _det_i_minus(blocks.full(), "M")


def factored_joint_det(s1: float, s2: float, t: float, n: int = DEFAULT_NODES, L=None, base: float = 16.0) -> float:
    """Same probability through the factored determinant identity."""
    blocks = assemble(s1, s2, t, n, L, base)
    m12 = _solve_i_minus(blocks.D11, blocks.B12, "D11")
    m21 = _solve_i_minus(blocks.D22, blocks.B21, "D22")
    core = _det_i_minus(m12 @ m21, "M12 M21")
    return _det_i_minus(blocks.D11, "D11") * _det_i_minus(blocks.D22, "D22") * core


def _trace_factors(s1, s2, t, n, L, base=16.0):
    blocks = assemble(s1, s2, t, n, L, base)
    m12 = _solve_i_minus(blocks.D11, blocks.B12, "D11")
    m21 = _solve_i_minus(blocks.D22, blocks.B21, "D22")
    return m12, m21


def trace_t12_t21(s1: float, s2: float, t: float, n: int = DEFAULT_NODES, L=None, base: float = 16.0) -> float:
    """tr(M12 M21), the exact grid version of the leading trace in the expansion."""
    m12, m21 = _trace_factors(s1, s2, t, n, L, base)
    return float(np.sum(m12 * m21.T))


def trace_t12_t21_squared(s1: float, s2: float, t: float, n: int = DEFAULT_NODES, L=None, base: float = 16.0) -> float:
    """tr((M12 M21)^2)."""
    m12, m21 = _trace_factors(s1, s2, t, n, L, base)
    prod = m12 @ m21
    return float(np.sum(prod * prod.T))


def resolvent_quantities(s: float, n: int = DEFAULT_NODES, L=None, base: float = 16.0) -> ResolventData:
    """Solve (I - chi K chi) f = chi {Ai, Ai', Ai''} and form u, v, w, u1."""
    g = _grid(s, n, L, base)
    d = _weighted_kernel(g, g, airy_kernel_matrix(g.nodes, g.nodes))
    a, ap = ai_values(g.nodes)
    app = g.nodes * a
    sw = g.sqrt_weights
    rhs = np.column_stack([sw * a, sw * ap, sw * app])
    sol = _solve_i_minus(d, rhs, "D")
    qt, pt, q1t = sol[:, 0], sol[:, 1], sol[:, 2]
    u = float(qt @ (sw * a))
    v = float(pt @ (sw * a))
    v_alt = float(qt @ (sw * ap))
    w = float(pt @ (sw * ap))
    u1 = float(q1t @ (sw * a))
    u1_alt = float(qt @ (sw * app))
    q_nodes = qt / sw
    a_end, _ = ai_values(np.array([s]))
    k_end = airy_kernel_matrix(np.array([s]), g.nodes)[0]
    q_end = float(a_end[0] + np.dot(g.weights * k_end, q_nodes))
    return ResolventData(
        s=float(s),
        grid=g,
        Q=q_nodes,
        P=pt / sw,
        Q1=q1t / sw,
        u=u,
        v=v,
        w=w,
        u1=u1,
        v_alt=v_alt,
        u1_alt=u1_alt,
        q_end=q_end,
    )
