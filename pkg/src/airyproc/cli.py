"""Command-line front end: evaluation, sweeps, and the verification suite.

Every global flag is mirrored by an AIRYPROC_* environment variable (the flag
wins).  Output is CSV by default or JSON with --output-format json; floats are
printed with 17 significant digits so identical invocations are byte
identical.  Nothing is written to disk unless --out (or --cache) is given.

Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage or
configuration error, 3 numerical failure (the failing module is named).
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from . import asymptotics, fredholm, painleve, verify
from .errors import AiryprocError, ConfigurationError, InstabilityError, SingularityError
from .quadrature import MAX_NODES, default_cutoff

__all__ = ["RunConfig", "main", "dispatch"]

ENV_PREFIX = "AIRYPROC_"


@dataclass
class RunConfig:
    nodes: int = 120
    cutoff: float = 16.0
    tol: float = 1e-12
    s0: float = painleve.DEFAULT_S0
    s_min: float = painleve.DEFAULT_S_MIN
    threads: int = 0
    output_format: str = "csv"


def _validate(cfg: RunConfig) -> None:
    if not (1 <= cfg.nodes <= MAX_NODES):
        raise ConfigurationError(f"cli: nodes={cfg.nodes} outside [1, {MAX_NODES}]")
    if not (0.0 < cfg.cutoff <= 64.0):
        raise ConfigurationError(f"cli: cutoff={cfg.cutoff} outside (0, 64]")
    if not (1e-13 <= cfg.tol <= 1e-8):
        raise ConfigurationError(f"cli: tol={cfg.tol} outside [1e-13, 1e-8]")
    if not (5.0 <= cfg.s0 <= 8.0):
        raise ConfigurationError(f"cli: s0={cfg.s0} outside [5, 8]")
    if not (-10.0 <= cfg.s_min <= cfg.s0 - 1.0):
        raise ConfigurationError(f"cli: s_min={cfg.s_min} outside [-10, s0-1]")
    if cfg.threads < 0:
        raise ConfigurationError(f"cli: threads={cfg.threads} must be >= 0")
    if cfg.output_format not in ("csv", "json"):
        raise ConfigurationError(f"cli: output format {cfg.output_format!r} not in {{csv, json}}")


def _env(name: str, cast, fallback):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw == "":
        return fallback
    try:
        return cast(raw)
    except ValueError as exc:
        raise ConfigurationError(f"cli: bad {ENV_PREFIX}{name}={raw!r}") from exc


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _parse_range(text: str):
    try:
        a, b, step = (float(p) for p in text.split(":"))
    except ValueError as exc:
        raise ConfigurationError(f"cli: bad range {text!r}, expected a:b:step") from exc
    if step <= 0 or b < a:
        raise ConfigurationError(f"cli: bad range {text!r}, need a <= b and step > 0")
    out = []
    k = 0
    while a + k * step <= b + 1e-9:
        out.append(a + k * step)
        k += 1
    return out


def _pmap(fn, items, threads):
    if threads == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    workers = (os.cpu_count() or 1) if threads == 0 else threads
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def _get_table(cfg: RunConfig, cache_path):
    if cache_path and os.path.exists(cache_path):
        return painleve.load_table(cache_path)
    table = painleve.hm_solve(s_min=cfg.s_min, s0=cfg.s0, tol=cfg.tol)
    if cache_path:
        painleve.save_table(cache_path, table)
    return table


# ---------------------------------------------------------------------------
# command bodies: each returns (header, rows, preamble_lines, checks, summary)


def _cmd_f2(args, cfg):
    table = _get_table(cfg, args.cache)
    svals = _parse_range(args.s_range)

    def row(s):
        fred = fredholm.f2_det(s, cfg.nodes, base=cfg.cutoff)
        pain = painleve.eval_state(table, s).F2
        return {"s": s, "f2_fredholm": fred, "f2_painleve": pain, "gap": fred - pain}

    return ["s", "f2_fredholm", "f2_painleve", "gap"], _pmap(row, svals, cfg.threads), [], [], None


def _cmd_q(args, cfg):
    table = _get_table(cfg, args.cache)
    rows = []
    for s in _parse_range(args.s_range):
        st = painleve.eval_state(table, s)
        rows.append({"s": s, "q": st.q, "q_prime": st.qp, "u": st.u, "J": st.J})
    return ["s", "q", "q_prime", "u", "J"], rows, [], [], None


def _cmd_joint(args, cfg):
    fn = fredholm.joint_det if args.method == "direct" else fredholm.factored_joint_det
    value = fn(args.s1, args.s2, args.t, cfg.nodes, base=cfg.cutoff)
    row = {"s1": args.s1, "s2": args.s2, "t": args.t, "method": args.method, "probability": value}
    return ["s1", "s2", "t", "method", "probability"], [row], [], [], None


def _cmd_coeffs(args, cfg):
    table = _get_table(cfg, args.cache)
    pair = asymptotics.coefficients(args.s1, args.s2, table)
    row = {"s1": pair.s1, "s2": pair.s2, "c2": pair.c2, "c4": pair.c4, **pair.factors}
    return list(row.keys()), [row], [], [], None


def _cmd_sweep(args, cfg):
    table = _get_table(cfg, args.cache)
    try:
        ts = [float(p) for p in args.t_list.split(",")]
    except ValueError as exc:
        raise ConfigurationError(f"cli: bad --t-list {args.t_list!r}") from exc
    rep = asymptotics.residual_sweep(args.s1, args.s2, ts, n=cfg.nodes, table=table, base=cfg.cutoff)
    summary = {
        "s1": rep.s1,
        "s2": rep.s2,
        "fitted_c2": rep.fitted_c2,
        "fitted_c4": rep.fitted_c4,
        "fitted_c6": rep.fitted_c6,
        "analytic_c2": rep.analytic_c2,
        "analytic_c4": rep.analytic_c4,
        "fit_residual": rep.fit_residual,
        "order_estimates": list(rep.order_estimates),
    }
    preamble = ["# " + " ".join(f"{k}={_fmt(v)}" for k, v in summary.items() if k != "order_estimates")]
    rows = [
        {"t": e.t, "D": e.D, "r0": e.r0, "r2": e.r2, "r4": e.r4, "r6_proxy": e.r6_proxy}
        for e in rep.entries
    ]
    return ["t", "D", "r0", "r2", "r4", "r6_proxy"], rows, preamble, [], summary


def _cmd_verify(args, cfg):
    table = _get_table(cfg, args.cache)
    results = verify.run_acceptance(n=cfg.nodes, table=table, base=cfg.cutoff)
    checks = [
        {"index": r.index, "name": r.name, "passed": r.passed, "detail": r.detail}
        for r in results
    ]
    return None, [], [], checks, None


# ---------------------------------------------------------------------------
# output


def _emit(stream, cfg, command, header, rows, preamble, checks, summary=None):
    if cfg.output_format == "json":
        doc = {
            "command": command,
            "config": asdict(cfg),
            "rows": rows,
            "checks": checks,
        }
        if summary is not None:
            doc["summary"] = summary
        stream.write(json.dumps(doc, indent=2) + "\n")
        return
    for line in preamble:
        stream.write(line + "\n")
    if header:
        stream.write(",".join(header) + "\n")
        for row in rows:
            fields = [str(v) if isinstance(v, str) else _fmt(v) for v in (row[h] for h in header)]
            stream.write(",".join(fields) + "\n")
    for chk in checks:
        status = "PASS" if chk["passed"] else "FAIL"
        stream.write(f"[{chk['index']:2d}] {status}  {chk['name']}: {chk['detail']}\n")


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--nodes", type=int, default=_env("NODES", int, 120), help="quadrature nodes per interval (default 120)")
    g.add_argument("--cutoff", type=float, default=_env("CUTOFF", float, 16.0), help="base cutoff length of the truncated intervals (default 16)")
    g.add_argument("--tol", type=float, default=_env("TOL", float, 1e-12), help="ODE tolerance (default 1e-12)")
    g.add_argument("--s0", type=float, default=_env("S0", float, painleve.DEFAULT_S0), help="tail initialization point (default 8)")
    g.add_argument("--s-min", type=float, default=_env("S_MIN", float, painleve.DEFAULT_S_MIN), help="lower end of the solution table (default -10)")
    g.add_argument("--threads", type=int, default=_env("THREADS", int, 0), help="worker threads for independent evaluations, 0 = auto")
    g.add_argument("--output-format", choices=("csv", "json"), default=_env("OUTPUT_FORMAT", str, "csv"))
    g.add_argument("--out", default=_env("OUT", str, None), help="write output to this path instead of stdout")
    g.add_argument("--cache", default=_env("CACHE", str, None), help="solution-table cache file (loaded if present, else written)")

    parser = argparse.ArgumentParser(prog="airyproc", description="Two-time Airy process distribution: determinants, Painleve II route, expansion coefficients.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("f2", parents=[common], help="tabulate F2 by both routes over an s-range")
    p.add_argument("--s-range", required=True, help="a:b:step")
    p.set_defaults(body=_cmd_f2)

    p = sub.add_parser("q", parents=[common], help="tabulate the Hastings-McLeod data over an s-range")
    p.add_argument("--s-range", required=True, help="a:b:step")
    p.set_defaults(body=_cmd_q)

    p = sub.add_parser("joint", parents=[common], help="two-time probability at (s1, s2, t)")
    p.add_argument("--s1", type=float, required=True)
    p.add_argument("--s2", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--method", choices=("direct", "factored"), default="direct")
    p.set_defaults(body=_cmd_joint)

    p = sub.add_parser("coeffs", parents=[common], help="expansion coefficients c2, c4 and their factors")
    p.add_argument("--s1", type=float, required=True)
    p.add_argument("--s2", type=float, required=True)
    p.set_defaults(body=_cmd_coeffs)

    p = sub.add_parser("sweep", parents=[common], help="residual ladder and fitted coefficients over a t-list")
    p.add_argument("--s1", type=float, required=True)
    p.add_argument("--s2", type=float, required=True)
    p.add_argument("--t-list", default="4,6,8,10,12")
    p.set_defaults(body=_cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.set_defaults(body=_cmd_verify)

    return parser


def dispatch(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        nodes=args.nodes,
        cutoff=args.cutoff,
        tol=args.tol,
        s0=args.s0,
        s_min=args.s_min,
        threads=args.threads,
        output_format=args.output_format,
    )
    _validate(cfg)
    header, rows, preamble, checks, summary = args.body(args, cfg)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            _emit(fh, cfg, args.command, header, rows, preamble, checks, summary)
    else:
        _emit(sys.stdout, cfg, args.command, header, rows, preamble, checks, summary)
    if args.command == "verify" and not all(c["passed"] for c in checks):
        return 1
    return 0


def main(argv=None) -> int:
    try:
        code = dispatch(argv)
    except (SingularityError, InstabilityError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except AiryprocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
