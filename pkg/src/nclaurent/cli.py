"""Command-line interface: expansion, generator construction, exact
verification, bounded-degree completeness, and numerical cross-checks.

Exit codes: 0 success, 1 verification or tolerance failure, 2 usage
error.  JSON output is deterministic (sorted keys) for a fixed config.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import annih, laurent, oracle, weyl

FORMAT_ENV = "NCLAURENT_FORMAT"


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-n", type=int, required=True, help="ambient dimension")
    p.add_argument("--format", choices=["text", "json"],
                   default=os.environ.get(FORMAT_ENV, "text"),
                   help="output format (env %s)" % FORMAT_ENV)


def _emit_json(data) -> None:
    print(json.dumps(data, sort_keys=True))


def cmd_expand(args) -> int:
    series = laurent.expand_product(args.n, args.J)
    if args.format == "json":
        _emit_json(series.to_json())
    else:
        for d in sorted(series.coeffs):
            print(f"u_{{{d}}} = {series.coeff(d).render(args.unicode)}")
    return 0


def cmd_generators(args) -> int:
    if args.m is not None:
        gens = annih.generators_nc(args.n, args.m, args.k)
    else:
        gens = annih.generators(args.n, args.k)
    if args.format == "json":
        _emit_json(gens.to_json())
    else:
        for label, op in zip(gens.labels, gens.ops):
            print(f"{label}: {op}")
    return 0


def cmd_verify(args) -> int:
    if args.m is not None:
        ok = annih.verify_nc(args.n, args.m, args.k)
        result = {"n": args.n, "m": args.m, "k": args.k, "annihilation": ok}
    else:
        ok = annih.verify(args.n, args.k)
        result = {"n": args.n, "k": args.k, "annihilation": ok}
    reports = []
    if args.complete:
        if args.m is not None:
            raise SystemExit("--complete is only supported without --m")
        report = annih.completeness_report(args.n, args.k, args.d, args.slack)
        reports.append(report)
        result["completeness"] = report.to_json()
        ok = ok and report.passes
    if args.format == "json":
        _emit_json(result)
    else:
        print(f"annihilation check: {'pass' if result['annihilation'] else 'FAIL'}")
        for report in reports:
            print(f"completeness (d={report.degree_bound}, "
                  f"slack={report.slack_used}): "
                  f"dim={report.annihilator_dim}, members={report.members}, "
                  f"{'pass' if report.passes else 'FAIL'}")
            for bad in report.unresolved:
                print(f"  unresolved: {bad}")
    return 0 if ok else 1


def cmd_complete(args) -> int:
    report = annih.completeness_report(args.n, args.k, args.d, args.slack)
    if args.format == "json":
        _emit_json(report.to_json())
    else:
        print(f"n={report.n} k={report.k} d={report.degree_bound} "
              f"slack={report.slack_used}: dim={report.annihilator_dim}, "
              f"members={report.members}, "
              f"{'pass' if report.passes else 'FAIL'}")
        for bad in report.unresolved:
            print(f"  unresolved: {bad}")
    return 0 if report.passes else 1


def _run_cross_check(args) -> tuple["oracle.CrossCheckReport",
                                    list["oracle.ZetaSample"]]:
    phi = oracle.TestFunction.gaussian(args.n)
    samples = oracle.contour_samples(args.n, phi, args.radius, args.count)
    report = oracle.cross_check(args.n, args.J, phi, args.tol, args.radius,
                                args.count, samples=samples)
    if args.csv:
        oracle.write_samples_csv(samples, args.csv)
    if args.figure:
        from . import figures
        coeffs, _ = oracle.laurent_fit(samples, args.n, args.J)
        figures.zeta_contour_figure(samples, coeffs, args.figure)
    return report, samples


def cmd_zeta(args) -> int:
    report, _ = _run_cross_check(args)
    if args.format == "json":
        _emit_json(report.to_json())
    else:
        for e in report.entries:
            print(f"c_{{{e.degree}}} = {e.fitted.real:+.10f} "
                  f"(symbolic {e.symbolic:+.10f}, |err| {e.abs_err:.2e}) "
                  f"{'ok' if e.ok else 'FAIL'}")
    return 0 if report.passed else 1


def cmd_crosscheck(args) -> int:
    report, samples = _run_cross_check(args)
    if args.figure:
        from . import figures
        base, ext = os.path.splitext(args.figure)
        figures.crosscheck_figure(report, f"{base}_degrees{ext or '.png'}")
    if args.format == "json":
        _emit_json(report.to_json())
    else:
        print(f"n={report.n} radius={report.radius} tol={report.tol} "
              f"residual={report.residual:.3e} "
              f"{'pass' if report.passed else 'FAIL'}")
        for e in report.entries:
            print(f"  d={e.degree}: fitted={e.fitted.real:+.10f} "
                  f"symbolic={e.symbolic:+.10f} abs_err={e.abs_err:.2e} "
                  f"rel_err={e.rel_err:.2e} {'ok' if e.ok else 'FAIL'}")
    return 0 if report.passed else 1


def cmd_divide(args) -> int:
    P = weyl.parse(args.operator, args.n)
    quotients, remainder = weyl.divide_by_theta(P)
    if args.format == "json":
        _emit_json({
            "P": P.to_json(),
            "Q": [q.to_json() for q in quotients],
            "R": remainder.to_json(),
        })
    else:
        print(f"P = {P}")
        for i, q in enumerate(quotients, start=1):
            print(f"Q{i} = {q}")
        print(f"R = {remainder}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nclaurent",
        description="Laurent expansion of (x1...xn)_+^lambda at lambda=-1, "
                    "annihilator verification, and zeta-function cross "
                    "checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="print the Laurent coefficients")
    _add_common(p)
    p.add_argument("-J", type=int, default=2, help="truncation order")
    p.add_argument("--unicode", action="store_true",
                   help="render deltas with unicode")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("generators", help="print annihilator generators")
    _add_common(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, default=None,
                   help="normal-crossing factor count (enables the "
                        "transversal-derivative generators)")
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("verify", help="check that generators annihilate")
    _add_common(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, default=None)
    p.add_argument("--complete", action="store_true",
                   help="also run the bounded-degree completeness report")
    p.add_argument("-d", type=int, default=3, help="operator degree bound")
    p.add_argument("--slack", type=int, default=2)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("complete", help="bounded-degree completeness report")
    _add_common(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-d", type=int, default=3)
    p.add_argument("--slack", type=int, default=2)
    p.set_defaults(func=cmd_complete)

    for name, help_text in (("zeta", "contour fit vs symbolic pairings"),
                            ("crosscheck", "detailed per-degree report")):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        p.add_argument("-J", type=int, default=2)
        p.add_argument("--tol", type=float, default=1e-6)
        p.add_argument("--radius", type=float, default=0.25)
        p.add_argument("--count", type=int, default=16)
        p.add_argument("--csv", default=None,
                       help="write contour samples to this CSV file")
        p.add_argument("--figure", default=None,
                       help="render figures to this image file")
        p.set_defaults(func=cmd_zeta if name == "zeta" else cmd_crosscheck)

    p = sub.add_parser("divide",
                       help="divide an operator by the theta operators "
                            "d_i x_i")
    _add_common(p)
    p.add_argument("operator", help='operator text, e.g. "x1 d1 + 2 x2"')
    p.set_defaults(func=cmd_divide)

    return parser


def _validate(args, parser: argparse.ArgumentParser) -> None:
    if args.n < 1:
        parser.error(f"dimension must be >= 1, got {args.n}")
    k = getattr(args, "k", None)
    m = getattr(args, "m", None)
    if m is not None and not 1 <= m <= args.n:
        parser.error(f"m must be in [1, {args.n}], got {m}")
    if k is not None:
        top = (m if m is not None else args.n) - 1
        if not 0 <= k <= top:
            parser.error(f"k must be in [0, {top}], got {k}")
    J = getattr(args, "J", None)
    if J is not None and J < 0:
        parser.error("J must be >= 0")
    d = getattr(args, "d", None)
    if d is not None and d < 1:
        parser.error("degree bound must be >= 1")
    if getattr(args, "slack", 0) < 0:
        parser.error("slack must be >= 0")
    if getattr(args, "tol", 1.0) <= 0:
        parser.error("tolerance must be positive")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
