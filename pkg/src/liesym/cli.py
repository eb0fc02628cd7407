"""Command-line front end.

Exit codes: 0 success, 1 a requested verification failed, 2 parse or
format errors, 3 unsupported-math errors.  Reports are byte-identical
for identical inputs.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .errors import (
    AnsatzError,
    DependentBasisError,
    FormatError,
    IntegrationError,
    LieSymError,
    NonClosureError,
    SingularMetricError,
    UnsupportedAdjointError,
    VerificationError,
)
from .files import load_generators, load_metric
from .geometry import geodesic_lagrangian, geodesic_system
from .liealg import (
    adjoint_exp,
    derived_series,
    killing_form,
    radical,
    levi_check,
    structure_constants,
)
from .numeric import drift_along_trace, integrate_geodesic
from .optimal import (
    OptimalSystemError,
    default_representatives,
    verify_optimal_cover,
)
from .reporting import (
    analyze_latex,
    analyze_payload,
    analyze_text,
    commutator_table_latex,
    commutator_table_text,
    dumps_json,
    generator_entry,
    killing_latex,
    killing_text,
    structure_constants_json,
    verify_payload,
    verify_text,
)
from .symexpr import ExprSyntaxError, differentiate, is_zero, parse_expr
from .symmetry import (
    default_ansatz,
    determining_system,
    solve_determining,
    verify_liepoint,
    verify_noether,
)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_FORMAT = 2
EXIT_UNSUPPORTED = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liesym",
        description="Symmetry analysis of geodesic equations over exact rationals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="solve the determining equations of a metric")
    p.add_argument("metric")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--noether", action="store_true")
    mode.add_argument("--liepoint", action="store_true")
    p.add_argument("--ansatz-degree", type=int, default=2)
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")

    p = sub.add_parser("verify", help="verify generators from a file against a metric")
    p.add_argument("metric")
    p.add_argument("generators")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--noether", action="store_true")
    mode.add_argument("--liepoint", action="store_true")

    p = sub.add_parser("algebra", help="structure analysis of a generator list")
    p.add_argument("generators")
    p.add_argument("--metric", required=True)
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")

    p = sub.add_parser("optimal", help="one-dimensional optimal-system coverage")
    p.add_argument("generators")
    p.add_argument("--metric", required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("integrate", help="numerically integrate geodesics")
    p.add_argument("metric")
    p.add_argument("--bind", action="append", default=[],
                   metavar="NAME=EXPR", help="instantiate an opaque function")
    p.add_argument("--init", nargs="+", required=True, type=float,
                   help="initial coordinates then velocities")
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--span", type=float, required=True)
    return parser


def _mode_of(args) -> str:
    if getattr(args, "noether", False):
        return "noether"
    return "liepoint"


def cmd_analyze(args) -> int:
    metric = load_metric(args.metric)
    mode = _mode_of(args)
    system = determining_system(metric, mode)
    ansatz = default_ansatz(metric.chart, args.ansatz_degree)
    fields = solve_determining(system, ansatz)
    reports = []
    for f in fields:
        rep = verify_noether(f, metric) if mode == "noether" else verify_liepoint(f, metric)
        reports.append(rep)
    payload = analyze_payload(mode, metric, reports, system, len(fields), ansatz)
    if args.format == "json":
        sys.stdout.write(dumps_json(payload))
    elif args.format == "latex":
        sys.stdout.write(analyze_latex(payload))
    else:
        sys.stdout.write(analyze_text(payload, reports))
    if not all(r.passed for r in reports):
        return EXIT_VERIFICATION
    return EXIT_OK


def cmd_verify(args) -> int:
    metric = load_metric(args.metric)
    fields = load_generators(args.generators, metric.chart, metric.functions)
    mode = _mode_of(args)
    reports = []
    for f in fields:
        rep = verify_noether(f, metric) if mode == "noether" else verify_liepoint(f, metric)
        reports.append(rep)
    payload = verify_payload(mode, metric, reports)
    sys.stdout.write(verify_text(payload, reports))
    return EXIT_OK if payload["all_pass"] else EXIT_VERIFICATION


def _heuristic_levi_split(g, rad_vectors):
    """Complement guess: the coordinate block outside the radical span
    (the block carrying the nondegenerate part of the Killing form for
    every bundled algebra).  levi_check verifies the guess."""
    from .linalg import express_in_basis

    m = g.dim
    h = []
    rad = [list(v) for v in rad_vectors]
    for i in range(m):
        v = [Fraction(0)] * m
        v[i] = Fraction(1)
        if not rad or express_in_basis(rad, v) is None:
            h.append(v)
    return h


def cmd_algebra(args) -> int:
    metric = load_metric(args.metric)
    fields = load_generators(args.generators, metric.chart, metric.functions)
    g = structure_constants(fields)
    K, semisimple = killing_form(g)
    chain, solvable = derived_series(g)
    rad = radical(g)
    h_guess = _heuristic_levi_split(g, rad)
    levi_ok = False
    if len(rad) + len(h_guess) == g.dim:
        levi_ok = levi_check(g, rad, h_guess)
    names = g.names()
    payload = {
        "basis": names,
        "structure_constants": structure_constants_json(g),
        "killing": [[str(K[i, j]) for j in range(g.dim)] for i in range(g.dim)],
        "semisimple": semisimple,
        "derived_series_dims": list(chain.dims),
        "solvable": solvable,
        "radical": [[str(c) for c in v] for v in rad],
        "levi_split": {
            "radical_dim": len(rad),
            "complement_indices": [i + 1 for i in range(g.dim)
                                   if any(v[i] for v in h_guess)],
            "verified": levi_ok,
        },
    }
    if args.format == "json":
        sys.stdout.write(dumps_json(payload))
    elif args.format == "latex":
        out = [commutator_table_latex(g), killing_latex(K, g.dim)]
        sys.stdout.write("\n".join(out))
    else:
        lines = ["commutator table:", commutator_table_text(g)]
        lines.append("killing form:")
        lines.append(killing_text(K, g.dim))
        lines.append(f"semisimple: {semisimple}")
        lines.append(f"derived series dims: {list(chain.dims)}")
        lines.append(f"solvable: {solvable}")
        rad_desc = ", ".join(
            " + ".join(f"{c}*{names[i]}" for i, c in enumerate(v) if c) for v in rad
        )
        lines.append(f"radical: {rad_desc if rad_desc else '0'}")
        lines.append(f"levi split verified: {levi_ok}")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_optimal(args) -> int:
    metric = load_metric(args.metric)
    fields = load_generators(args.generators, metric.chart, metric.functions)
    g = structure_constants(fields)
    reps = default_representatives()
    report = verify_optimal_cover(g, reps, samples=args.samples, seed=args.seed)
    names = g.names()
    report["reps"] = [
        {"case": rep.case_id, "pattern": rep.describe(names)} for rep in reps
    ]
    sys.stdout.write(dumps_json(report))
    covered = report["matched_total"] == report["valid_total"]
    return EXIT_OK if covered else EXIT_VERIFICATION


def cmd_integrate(args) -> int:
    metric = load_metric(args.metric)
    chart = metric.chart
    n = chart.dim
    if len(args.init) != 2 * n:
        raise FormatError("<init>", 0, f"--init needs {2 * n} numbers for this chart")
    bindings = {}
    for item in args.bind:
        name, eq, expr_text = item.partition("=")
        if not eq:
            raise FormatError("<bind>", 0, "--bind expects NAME=EXPR")
        if name not in metric.functions:
            raise FormatError("<bind>", 0, f"{name!r} is not a declared function")
        bindings[name] = parse_expr(expr_text, None)
    missing = set(metric.functions) - set(bindings)
    if missing:
        raise FormatError("<bind>", 0, f"unbound functions: {sorted(missing)}")
    system = geodesic_system(metric)
    trace = integrate_geodesic(system, bindings, args.init[:n], args.init[n:],
                               args.step, args.span)
    lagrangian = geodesic_lagrangian(metric)
    watches = [("lagrangian", lagrangian)]
    for c in chart.coords:
        cyclic = all(is_zero(differentiate(comp, c))
                     for row in metric.components for comp in row)
        if cyclic:
            watches.append((f"momentum_{c}", differentiate(lagrangian, chart.jet1(c))))
    lines = [f"steps: {len(trace.samples) - 1}", f"step: {trace.step!r}"]
    s_end, x_end, v_end = trace.samples[-1]
    lines.append("final s: " + repr(s_end))
    lines.append("final x: " + " ".join(repr(v) for v in x_end))
    lines.append("final xdot: " + " ".join(repr(v) for v in v_end))
    for label, expr in watches:
        drift = drift_along_trace(expr, trace, chart, bindings)
        lines.append(f"drift {label}: {drift!r}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": cmd_analyze,
        "verify": cmd_verify,
        "algebra": cmd_algebra,
        "optimal": cmd_optimal,
        "integrate": cmd_integrate,
    }
    try:
        return handlers[args.command](args)
    except (FormatError, ExprSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (UnsupportedAdjointError, OptimalSystemError, IntegrationError,
            SingularMetricError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (VerificationError, NonClosureError, DependentBasisError, AnsatzError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except LieSymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
