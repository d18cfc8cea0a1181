"""Command-line front end.

Reports are JSON with sorted keys and floats rounded to 15 significant
digits, so identical inputs, flags and seeds give byte-identical output.
Exit codes: 0 success, 1 ``verify`` found a failing check, 2 invalid input,
3 ``synthesize`` refused because ``P`` does not majorize ``Q``, 64 usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys

import numpy as np

from . import __version__
from .bound import extreme_point, tradeoff_bound
from .divergence import err_dis_sum, js_divergence, relative_entropy
from .errors import NoZEZDError, TradeoffError
from .majorization import coarse_grain, majorizes, sort_desc
from .oracle import s2_min_numeric, sample_sequential, sweep_qubit, verdict
from .problem import ProblemFile, load_problem
from .quantum import Basis, Scenario, born_distribution, disturbed_distribution, random_basis
from .synthesis import mixed_qubit_zezd, sign_strings, synthesize, zezd_basis

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_NO_ZEZD = 3
EXIT_USAGE = 64

SWEEP_COLUMNS = ["theta", "p1", "q1", "verdict", "blue_bound_nats", "red_oracle_nats"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- serialization -------------------------------------------------------------

def _clean(x):
    """JSON-ready copy of ``x`` with floats at 15 significant digits."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return float(f"{x:.15g}") + 0.0
    if isinstance(x, (complex, np.complexfloating)):
        return [_clean(x.real), _clean(x.imag)]
    return x


def to_json(report) -> str:
    return json.dumps(_clean(report), indent=2, sort_keys=True) + "\n"


def _flatten(x, prefix=""):
    if isinstance(x, dict):
        for k in sorted(x):
            yield from _flatten(x[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(x, list):
        for i, v in enumerate(x):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, x


def to_csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(report, dict) and "rows" in report and "columns" in report:
        w.writerow(report["columns"])
        for row in _clean(report["rows"]):
            w.writerow(row)
    else:
        w.writerow(["field", "value"])
        for k, v in _flatten(_clean(report)):
            w.writerow([k, v])
    return buf.getvalue()


def _basis_out(B: Basis):
    return [[[float(z.real), float(z.imag)] for z in v] for v in B.vectors]


# --- commands ------------------------------------------------------------------

def _read_problem(args) -> ProblemFile:
    if not args.input:
        raise UsageError("this command needs -i PROBLEM")
    if args.input == "-":
        return load_problem(sys.stdin.buffer.read())
    with open(args.input, "rb") as fh:
        return load_problem(fh.read())


def _stats(s: Scenario, meas: Basis):
    P, Q = s.P, s.Q
    Pp = born_distribution(s.state, meas)
    Qt = disturbed_distribution(s.state, meas, s.basis_b)
    return {"Pprime": Pp.values, "Qtilde": Qt.values,
            "err": relative_entropy(P, Pp), "dis": relative_entropy(Q, Qt)}


def _bound_dict(rep, list_partitions=False):
    Pp, Qt = rep.extreme_point_labeled()
    out = {
        "bound": rep.bound,
        "zezdPossible": rep.zezd_possible,
        "sortedP": rep.sorted_p.values,
        "sortedQ": rep.sorted_q.values,
        "permP": list(rep.sorted_p.perm),
        "permQ": list(rep.sorted_q.perm),
        "coarsest": [{"partition": str(p), "js": rep.per_partition_js[p]} for p in rep.coarsest],
        "argmin": [str(p) for p in rep.argmin],
        "extremePoint": {"Pprime": Pp, "Qtilde": Qt},
    }
    if list_partitions:
        out["validPartitions"] = [{"partition": str(p), "js": rep.all_valid_js[p]}
                                  for p in rep.valid_partitions]
    return out


def cmd_analyze(args):
    pf = _read_problem(args)
    s = pf.scenario
    rep = tradeoff_bound(s.P, s.Q)
    out = {"dimension": s.dim, "P": s.P.values, "Q": s.Q.values,
           "verdict": verdict(s.P, s.Q), "zezdPossible": rep.zezd_possible,
           "bound": rep.bound, "jsPQ": js_divergence(s.P, s.Q)}
    if pf.eta is not None:
        out["eta"] = pf.eta
    if args.oracle_budget is not None:
        if args.seed is None:
            raise UsageError("--oracle-budget needs --seed")
        r = s2_min_numeric(s, args.oracle_budget, args.seed)
        out["oracle"] = {"min": r.min_value, "evaluations": r.evaluations}
    return out


def cmd_synthesize(args):
    pf = _read_problem(args)
    s = pf.scenario
    if not majorizes(s.P, s.Q):
        raise NoZEZDError("P does not majorize Q; the tradeoff bound applies instead "
                          f"(bound {tradeoff_bound(s.P, s.Q).bound:.15g} nats)")
    solutions = []
    if s.state.is_pure or pf.eta is not None:
        core = pf.base if pf.eta is not None else s
        sP, sQ = sort_desc(core.P), sort_desc(core.Q)
        branches = sign_strings(s.dim) if args.all_branches else [args.signs]
        for bits in branches:
            sol = synthesize(sP.values, sQ.values, bits)
            B = zezd_basis(core, bits)
            solutions.append({"signs": sol.signs, "unitarity": sol.unitarity,
                              "residual1": sol.residual1, "residual2": sol.residual2,
                              "basis": _basis_out(B), **_stats(s, B)})
    else:
        B = mixed_qubit_zezd(s) if s.dim == 2 else zezd_basis(s)
        solutions.append({"signs": "", "basis": _basis_out(B), **_stats(s, B)})
    ok = all(x["err"] + x["dis"] <= 1e-9 for x in solutions)
    return {"P": s.P.values, "Q": s.Q.values, "solutions": solutions,
            "count": len(solutions), "verified": ok}


def cmd_bound(args):
    pf = _read_problem(args)
    s = pf.scenario
    rep = tradeoff_bound(s.P, s.Q, keep_all=args.list_partitions)
    out = _bound_dict(rep, args.list_partitions)
    out.update({"P": s.P.values, "Q": s.Q.values, "verdict": verdict(s.P, s.Q)})
    return out


def cmd_oracle(args):
    pf = _read_problem(args)
    s = pf.scenario
    r = s2_min_numeric(s, args.budget, args.seed)
    B = r.basis(s)
    return {"min": r.min_value, "evaluations": r.evaluations, "refined": r.refined,
            "bound": tradeoff_bound(s.P, s.Q).bound, "budget": args.budget,
            "seed": args.seed, "basis": _basis_out(B)}


def cmd_sweep(args):
    rows = sweep_qubit(args.theta_start, args.theta_end, args.steps, args.budget, args.seed)
    return {"columns": SWEEP_COLUMNS,
            "rows": [[r.theta, r.p1, r.q1, r.verdict, r.blue, r.red] for r in rows]}


def cmd_sample(args):
    pf = _read_problem(args)
    s = pf.scenario
    if args.measure == "zezd":
        meas = zezd_basis(s)
    elif args.measure == "a":
        meas = s.basis_a
    else:
        meas = zezd_basis(s) if majorizes(s.P, s.Q) else s.basis_a
    empP, empQ = sample_sequential(s, meas, args.shots, args.seed)
    st = _stats(s, meas)
    return {"shots": args.shots, "seed": args.seed, "empiricalPprime": empP.values,
            "empiricalQtilde": empQ.values, **st,
            "tvPprime": 0.5 * float(np.abs(empP.values - st["Pprime"]).sum()),
            "tvQtilde": 0.5 * float(np.abs(empQ.values - st["Qtilde"]).sum())}


def _verify_checks(pf: ProblemFile, budget, seed):
    """List of ``(name, passed, detail)`` property checks on one instance."""
    s = pf.scenario
    P, Q = s.P, s.Q
    checks = []
    rep = tradeoff_bound(P, Q, keep_all=True)
    zezd = majorizes(P, Q)
    checks.append(("bound_zero_iff_majorizes", (rep.bound == 0.0) == zezd, rep.bound))
    if zezd:
        if s.state.is_pure or pf.eta is not None:
            bases = [zezd_basis(pf.base, bits) for bits in sign_strings(s.dim)]
        else:
            bases = [zezd_basis(s)]
        worst = max(_stats(s, B)["err"] + _stats(s, B)["dis"] for B in bases)
        checks.append(("zezd_err_dis_vanish", worst <= 1e-9, worst))
    else:
        checks.append(("bound_positive", rep.bound > 0, rep.bound))
    js_min_all = min(rep.all_valid_js.values())
    checks.append(("coarsest_optimal", abs(js_min_all - rep.bound) <= 1e-12 or zezd,
                   js_min_all - rep.bound))
    worst = 0.0
    for part in rep.valid_partitions:
        Pp, Qt = extreme_point(rep.sorted_p, rep.sorted_q, part)
        val = err_dis_sum(rep.sorted_p.values, rep.sorted_q.values, Pp, Qt)
        js = js_divergence(coarse_grain(rep.sorted_p.values, part),
                           coarse_grain(rep.sorted_q.values, part))
        worst = max(worst, abs(val - js))
    checks.append(("extreme_point_identity", worst <= 1e-12, worst))
    rng = np.random.default_rng(seed)
    ok = True
    for _ in range(200):
        st = _stats(s, random_basis(s.dim, rng))
        ok = ok and majorizes(st["Pprime"], st["Qtilde"])
    checks.append(("s2_inside_s1", ok, 200))
    if s.dim <= 6:
        r = s2_min_numeric(s, budget, rng)
        checks.append(("oracle_above_bound", r.min_value >= rep.bound - 1e-9,
                       r.min_value - rep.bound))
    return checks


def cmd_verify(args):
    pf = _read_problem(args)
    checks = _verify_checks(pf, args.budget, args.seed)
    return {"checks": [{"name": n, "passed": bool(p), "detail": d} for n, p, d in checks],
            "passed": all(p for _, p, _ in checks)}


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-i", "--input", help="problem file (JSON); '-' reads stdin")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "csv"],
                        help="report format (default: csv for *.csv outputs, else json)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="edtradeoff", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="P, Q, verdict and bound")
    a.add_argument("--oracle-budget", type=int)
    a.add_argument("--seed", type=int)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("synthesize", parents=[common], help="zero-error zero-disturbance bases")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--all-branches", action="store_true")
    g.add_argument("--signs", metavar="BITS", help="branch selector, one bit per 2x2 block")
    s.set_defaults(func=cmd_synthesize)

    b = sub.add_parser("bound", parents=[common], help="Jensen-Shannon bound report")
    b.add_argument("--list-partitions", action="store_true")
    b.set_defaults(func=cmd_bound)

    o = sub.add_parser("oracle", parents=[common], help="numerical minimum of Err + Dis")
    o.add_argument("--budget", type=int, required=True)
    o.add_argument("--seed", type=int, required=True)
    o.set_defaults(func=cmd_oracle)

    w = sub.add_parser("sweep", parents=[common], help="qubit sigma_z / sigma_x family")
    w.add_argument("--theta-start", type=float, default=math.pi / 4)
    w.add_argument("--theta-end", type=float, default=math.pi / 2)
    w.add_argument("--steps", type=int, default=100)
    w.add_argument("--budget", type=int, default=100000)
    w.add_argument("--seed", type=int, required=True)
    w.set_defaults(func=cmd_sweep)

    m = sub.add_parser("sample", parents=[common], help="simulate sequential measurements")
    m.add_argument("--shots", type=int, required=True)
    m.add_argument("--seed", type=int, required=True)
    m.add_argument("--measure", choices=["auto", "zezd", "a"], default="auto",
                   help="first measurement: ZEZD basis, A's basis, or ZEZD when it exists")
    m.set_defaults(func=cmd_sample)

    v = sub.add_parser("verify", parents=[common], help="property checks on one instance")
    v.add_argument("--budget", type=int, default=10000)
    v.add_argument("--seed", type=int, required=True)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help/--version exit 0, parse errors exit 64
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        report = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"edtradeoff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoZEZDError as exc:
        print(f"edtradeoff: {exc}", file=sys.stderr)
        return EXIT_NO_ZEZD
    except (TradeoffError, OSError) as exc:
        print(f"edtradeoff: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    fmt = args.format or ("csv" if (args.output or "").endswith(".csv") else "json")
    text = to_csv(report) if fmt == "csv" else to_json(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not report["passed"]:
        return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
