"""Large-t expansion coefficients c2, c4 and their verification against determinants.

The two-time probability expands as

    D(s1, s2; t) = F2(s1) F2(s2) + c2(s1,s2) t^{-2} + c4(s1,s2) t^{-4} + O(t^{-6})

with coefficients assembled from Painleve-route quantities:

    c2 = F2(s1) F2(s2) u(s1) u(s2)            ( = F2'(s1) F2'(s2) )
    c4 = F2(s1) F2(s2) [ 1/4 u1^2 u2^2 + 1/4 q1^2 q2^2 - 1/2 q1^2 u2^2
                         + J(s1) u(s2) + (s1 <-> s2) ]

where subscripts abbreviate evaluation at s1/s2 and J is the integral carried
by the solution table.  ``residual_sweep`` measures D - F2 F2 over a t-grid,
peels off the two orders, and fits c2, c4 independently of the analytic route.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import fredholm, painleve
from .errors import ConfigurationError

__all__ = ["CoefficientPair", "SweepEntry", "ResidualReport", "coefficients", "c4_forms", "residual_sweep", "default_table", "DEFAULT_SWEEP"]

DEFAULT_SWEEP = (4.0, 6.0, 8.0, 10.0, 12.0)


@lru_cache(maxsize=4)
def default_table(s_min: float = painleve.DEFAULT_S_MIN, s0: float = painleve.DEFAULT_S0, tol: float = painleve.DEFAULT_TOL) -> painleve.HmTable:
    """One shared solution table per configuration."""
    return painleve.hm_solve(s_min=s_min, s0=s0, tol=tol)


@dataclass(frozen=True)
class CoefficientPair:
    s1: float
    s2: float
    c2: float
    c4: float
    factors: dict


@dataclass(frozen=True)
class SweepEntry:
    t: float
    D: float
    r0: float
    r2: float
    r4: float
    r6_proxy: float


@dataclass(frozen=True)
class ResidualReport:
    s1: float
    s2: float
    entries: tuple
    fitted_c2: float
    fitted_c4: float
    fitted_c6: float
    fit_residual: float
    order_estimates: tuple
    analytic_c2: float
    analytic_c4: float


def _half_bracket(a: painleve.PainleveState, b: painleve.PainleveState) -> float:
    # one orientation of the c4 bracket; the full bracket is this plus the
    # reversed orientation, which makes the s1 <-> s2 symmetry exact in floats
    return (
        0.25 * ((a.u * a.u) * (b.u * b.u))
        + 0.25 * ((a.q * a.q) * (b.q * b.q))
        - 0.5 * ((a.q * a.q) * (b.u * b.u))
        + a.J * b.u
    )


def c4_forms(s1: float, s2: float, table: painleve.HmTable):
    """The explicit q/u bracket for c4 and its pre-substitution v/J form.

    The two are identical through v = (u^2 - q^2)/2; returning both lets the
    algebra be cross-checked numerically.
    """
    a = painleve.eval_state(table, s1)
    b = painleve.eval_state(table, s2)
    f22 = a.F2 * b.F2
    bracket = _half_bracket(a, b) + _half_bracket(b, a)
    bracket_v = 2.0 * (a.v * b.v) + (a.J * b.u + b.J * a.u)
    return f22 * bracket, f22 * bracket_v


def coefficients(s1: float, s2: float, table: painleve.HmTable | None = None) -> CoefficientPair:
    """c2 and c4 at (s1, s2) with the factors they decompose into."""
    if table is None:
        table = default_table()
    a = painleve.eval_state(table, s1)
    b = painleve.eval_state(table, s2)
    c2 = (a.F2 * a.u) * (b.F2 * b.u)
    c4, _ = c4_forms(s1, s2, table)
    factors = {
        "F2_s1": a.F2,
        "F2_s2": b.F2,
        "u_s1": a.u,
        "u_s2": b.u,
        "q_s1": a.q,
        "q_s2": b.q,
        "v_s1": a.v,
        "v_s2": b.v,
        "J_s1": a.J,
        "J_s2": b.J,
    }
    return CoefficientPair(s1=float(s1), s2=float(s2), c2=c2, c4=c4, factors=factors)


def residual_sweep(s1: float, s2: float, t_values=DEFAULT_SWEEP, n: int = fredholm.DEFAULT_NODES, L=None, table: painleve.HmTable | None = None, base: float = 16.0) -> ResidualReport:
    """Joint determinants over a t-grid and the residual ladder r0, r2, r4, r6.

    The fit works on r0 * t^2 (squared residuals weighted by t^4, which
    balances the conditioning of the columns) in the even-power basis
    {t^-2, ..., t^-10} capped at the number of sweep points, so the default
    five-point sweep is fitted by exact interpolation.  The deep columns are
    nuisance terms: the true t^-6 tail is of order 1e-1 at moderate s and
    would otherwise leak into the leading coefficients at the 1e-3..1e0
    level.  Only the t^-2/t^-4 coefficients are deliverables; t^-6 is kept
    as a diagnostic.
    """
    ts = np.asarray(sorted(float(t) for t in t_values))
    if len(ts) < 3:
        raise ConfigurationError("asymptotics: need at least three t values")
    if ts[0] < 2.0:
        raise ConfigurationError("asymptotics: sweep requires t >= 2")
    pair = coefficients(s1, s2, table)
    f22 = fredholm.f2_det(s1, n, L, base) * fredholm.f2_det(s2, n, L, base)
    entries = []
    rems = []
    for t in ts:
        d = fredholm.joint_det(s1, s2, t, n, L, base)
        r0 = d - f22
        rem = r0 - pair.c2 / t**2 - pair.c4 / t**4
        rems.append(rem)
        entries.append(
            SweepEntry(
                t=t,
                D=d,
                r0=r0,
                r2=r0 * t**2,
                r4=(r0 - pair.c2 / t**2) * t**4,
                r6_proxy=rem * t**6,
            )
        )
    r0s = np.array([e.r0 for e in entries])
    ncols = min(len(ts), 5)
    design = np.column_stack([ts ** (-2.0 * k) for k in range(ncols)])
    rhs = r0s * ts**2
    sol, *_ = np.linalg.lstsq(design, rhs, rcond=None)
    fit_res = float(np.linalg.norm(design @ sol - rhs))
    orders = tuple(
        float(np.log(abs(rems[i] / rems[i + 1])) / np.log(ts[i + 1] / ts[i]))
        for i in range(len(ts) - 1)
        if rems[i + 1] != 0.0
    )
    return ResidualReport(
        s1=float(s1),
        s2=float(s2),
        entries=tuple(entries),
        fitted_c2=float(sol[0]),
        fitted_c4=float(sol[1]),
        fitted_c6=float(sol[2]) if ncols >= 3 else float("nan"),
        fit_residual=fit_res,
        order_estimates=orders,
        analytic_c2=pair.c2,
        analytic_c4=pair.c4,
    )
