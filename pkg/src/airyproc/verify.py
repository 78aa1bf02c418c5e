"""The acceptance suite: every contract the package promises, run end to end.

Each check returns a CheckResult; `run_acceptance` executes all of them
against one shared solution table and one node count.  The CLI `verify`
command prints one line per check, and the pytest acceptance module asserts
each result individually.
"""

import time
from dataclasses import dataclass

import numpy as np

from . import asymptotics, fredholm, painleve
from .airy import ai

__all__ = ["CheckResult", "run_acceptance", "ACCEPTANCE_NAMES"]

F2_POINTS = (-6.0, -4.0, -2.0, 0.0, 2.0)
TAIL_POINTS = (5.0, 5.5, 6.0)
RESOLVENT_POINTS = (-4.0, -2.0, 0.0, 2.0)
IDENTITY_POINTS = (-5.0, -3.0, -1.0, 0.0, 1.0)
FACTOR_TRIPLES = ((0.0, 0.0, 4.0), (0.0, -1.0, 6.0), (-2.0, 1.0, 8.0))
SWEEP_PAIRS = ((0.0, 0.0), (0.0, -1.0))
LATTICE_S = (-4.0, -2.0, 0.0, 2.0)
LATTICE_T = (2.0, 5.0)

ACCEPTANCE_NAMES = (
    "cross-route F2",
    "tail q ~ Ai",
    "resolvent vs painleve u,v,w,u1",
    "integral identity gap",
    "determinant factorization",
    "fitted c2 vs analytic",
    "fitted c4 vs analytic",
    "remainder order t^-6",
    "trace expansion remainder",
    "symmetry and probability bounds",
    "grid doubling stability",
)


@dataclass(frozen=True)
class CheckResult:
    index: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _result(index, passed, detail, t0):
    return CheckResult(
        index=index,
        name=ACCEPTANCE_NAMES[index - 1],
        passed=bool(passed),
        detail=detail,
        seconds=time.perf_counter() - t0,
    )


def run_acceptance(n: int = fredholm.DEFAULT_NODES, table: painleve.HmTable | None = None, base: float = 16.0, progress=None):
    """Run all eleven checks; returns a list of CheckResult."""
    if table is None:
        table = asymptotics.default_table()
    results = []
    dets_n = {}  # label -> value at node count n, reused by the doubling check

    def emit(res):
        results.append(res)
        if progress is not None:
            progress(res)

    # 1: F2 agreement between the determinant and exp(-m) routes
    t0 = time.perf_counter()
    gaps = []
    for s in F2_POINTS:
        f2f = fredholm.f2_det(s, n, base=base)
        dets_n[f"f2({s})"] = f2f
        gaps.append(abs(f2f - painleve.eval_state(table, s).F2))
    worst = max(gaps)
    emit(_result(1, worst <= 1e-8, f"max |F2_fredholm - F2_painleve| = {worst:.3e} (tol 1e-8)", t0))

    # 2: tail asymptotics of q
    t0 = time.perf_counter()
    gaps = [abs(painleve.eval_state(table, s).q - ai(s)) for s in TAIL_POINTS]
    worst = max(gaps)
    emit(_result(2, worst <= 1e-10, f"max |q - Ai| on {TAIL_POINTS} = {worst:.3e} (tol 1e-10)", t0))

    # 3: resolvent route vs Painleve route for u, v, w, u1
    t0 = time.perf_counter()
    worst = 0.0
    for s in RESOLVENT_POINTS:
        r = fredholm.resolvent_quantities(s, n, base=base)
        st = painleve.eval_state(table, s)
        worst = max(worst, abs(r.u - st.u), abs(r.v - st.v), abs(r.w - st.w), abs(r.u1 - st.u1))
    emit(_result(3, worst <= 1e-6, f"max route difference = {worst:.3e} (tol 1e-6)", t0))

    # 4: the two forms of the J integral
    t0 = time.perf_counter()
    worst = max(abs(painleve.integral_identity_gap(table, s)) for s in IDENTITY_POINTS)
    emit(_result(4, worst <= 1e-8, f"max |A - B| = {worst:.3e} (tol 1e-8)", t0))

    # 5: direct vs factored determinant
    t0 = time.perf_counter()
    worst = 0.0
    for s1, s2, t in FACTOR_TRIPLES:
        d = fredholm.joint_det(s1, s2, t, n, base=base)
        dets_n[f"joint({s1},{s2},{t})"] = d
        worst = max(worst, abs(d - fredholm.factored_joint_det(s1, s2, t, n, base=base)))
    emit(_result(5, worst <= 1e-12, f"max |direct - factored| = {worst:.3e} (tol 1e-12)", t0))

    # 6 and 7: fitted coefficients from the sweep
    t0 = time.perf_counter()
    reports = {}
    for s1, s2 in SWEEP_PAIRS:
        rep = asymptotics.residual_sweep(s1, s2, n=n, table=table, base=base)
        reports[(s1, s2)] = rep
        for e in rep.entries:
            dets_n[f"joint({s1},{s2},{e.t})"] = e.D
        dets_n[f"f2({s1})"] = fredholm.f2_det(s1, n, base=base)
        dets_n[f"f2({s2})"] = fredholm.f2_det(s2, n, base=base)
    gap2 = max(abs(rep.fitted_c2 / rep.analytic_c2 - 1.0) for rep in reports.values())
    emit(_result(6, gap2 <= 1e-3, f"max relative c2 gap = {gap2:.3e} (tol 1e-3)", t0))
    t0 = time.perf_counter()
    gap4 = max(abs(rep.fitted_c4 / rep.analytic_c4 - 1.0) for rep in reports.values())
    emit(_result(7, gap4 <= 1e-2, f"max relative c4 gap = {gap4:.3e} (tol 1e-2)", t0))

    # 8: the remainder after c2, c4 drops like t^-6
    t0 = time.perf_counter()
    rep = reports[(0.0, 0.0)]
    rem = {e.t: e.r6_proxy / e.t**6 for e in rep.entries}
    ratio = float(np.log2(abs(rem[4.0] / rem[8.0])))
    emit(_result(8, 5.0 <= ratio <= 7.0, f"log2 |rem(4)/rem(8)| = {ratio:.3f} (band [5, 7])", t0))

    # 9: trace expansion remainder is order t^-6
    t0 = time.perf_counter()
    st = painleve.eval_state(table, 0.0)
    bracket = 2.0 * st.v * st.v + 2.0 * (2.0 * st.u1 - st.w) * st.u
    e_of_t = {}
    for t in (10.0, 20.0):
        tr = fredholm.trace_t12_t21(0.0, 0.0, t, n, base=base)
        e_of_t[t] = abs(tr + st.u * st.u / t**2 + bracket / t**4)
    ok = e_of_t[10.0] <= 10.0 * (2.0**6) * e_of_t[20.0]
    emit(_result(9, ok, f"E(10)={e_of_t[10.0]:.3e} vs 10*2^6*E(20)={640 * e_of_t[20.0]:.3e}", t0))

    # 10: s1 <-> s2 symmetry and probability bounds on the lattice
    t0 = time.perf_counter()
    worst_sym = 0.0
    worst_low = worst_high = -np.inf
    f2_cache = {s: fredholm.f2_det(s, n, base=base) for s in LATTICE_S}
    for t in LATTICE_T:
        for s1 in LATTICE_S:
            for s2 in LATTICE_S:
                if s1 > s2:
                    continue
                d = fredholm.joint_det(s1, s2, t, n, base=base)
                worst_sym = max(worst_sym, abs(d - fredholm.joint_det(s2, s1, t, n, base=base)))
                worst_low = max(worst_low, f2_cache[s1] * f2_cache[s2] - d)
                worst_high = max(worst_high, d - min(f2_cache[s1], f2_cache[s2]))
    ok = worst_sym <= 1e-10 and worst_low <= 1e-10 and worst_high <= 1e-10
    emit(
        _result(
            10,
            ok,
            f"max asymmetry {worst_sym:.2e}, bound slacks {worst_low:.2e}/{worst_high:.2e} (tol 1e-10)",
            t0,
        )
    )

    # 11: doubling the node count moves no reported determinant by 1e-9
    t0 = time.perf_counter()
    n2 = 2 * n
    worst = 0.0
    for label, value in dets_n.items():
        kind, args = label.split("(", 1)
        parts = [float(p) for p in args.rstrip(")").split(",")]
        if kind == "f2":
            other = fredholm.f2_det(parts[0], n2, base=base)
        else:
            other = fredholm.joint_det(parts[0], parts[1], parts[2], n2, base=base)
        worst = max(worst, abs(value - other))
    emit(_result(11, worst <= 1e-9, f"max determinant shift under n -> 2n: {worst:.3e} (tol 1e-9)", t0))

    return results
