"""Command-line interface.

Subcommands: ``eval`` (cocycle of a flag quadruple file), ``verify``
(seeded Monte-Carlo property suites), ``invariant`` (decorated
triangulation files), ``veronese`` (emit Veronese flags), ``dilog`` and
``fixtures``.  Exit codes: 0 success, 1 property failure, 2 usage or
schema error, 3 input-invariant violation.  ``BOREL_TOL`` overrides the
default verification tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from .flags import borel_bn
from .serialize import (InputInvariantError, SchemaError, flag_quad_from_json,
                        flag_to_json, parse_point_literal)
from .triangulation import (lift_veronese, load, maximality_ratio,
                            tetrahedron_contributions)
from .verify import DEFAULT_TOLERANCES, PROPERTY_NAMES, run_property, sharp_bound
from .veronese import veronese_flag

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_SCHEMA = 2
EXIT_INVARIANT = 3

FIXTURE_NAMES = ("regular_simplex.json", "figure_eight.json",
                 "quad_regular_n2.json")


def _env_tol():
    raw = os.environ.get("BOREL_TOL")
    if raw is None:
        return None
    try:
        return float(raw)
    except ValueError:
        print(f"ignoring unparsable BOREL_TOL={raw!r}", file=sys.stderr)
        return None


def _common(parser):
    parser.add_argument("--json", action="store_true",
                        help="emit machine-readable JSON")
    parser.add_argument("--tol", type=float, default=None,
                        help="verification tolerance (default per property; "
                             "BOREL_TOL overrides)")
    parser.add_argument("--seed", type=int, default=0, help="RNG seed")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker processes for sample batches")
    parser.add_argument("--exact", action="store_true",
                        help="sample exact rational inputs where supported")
    return parser


def build_parser():
    top = argparse.ArgumentParser(
        prog="borel",
        description="Volume cocycle on flag quadruples and triangulation "
                    "invariants")
    sub = top.add_subparsers(dest="command", required=True)

    p = _common(sub.add_parser("eval", help="cocycle of a flag-quadruple file"))
    p.add_argument("file", help="JSON array of four flags")

    p = _common(sub.add_parser("verify", help="run a property suite"))
    p.add_argument("property", choices=PROPERTY_NAMES)
    p.add_argument("--n", type=int, default=3, help="ambient dimension")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--report-dir", default=None,
                   help="write residual CSV and histogram figure here")

    p = _common(sub.add_parser("invariant", help="evaluate a triangulation file"))
    p.add_argument("file")
    p.add_argument("--lift", type=int, default=None, metavar="N",
                   help="lift point decorations through the Veronese flag map")
    p.add_argument("--report-dir", default=None,
                   help="write per-tetrahedron CSV and bar figure here")

    p = _common(sub.add_parser("veronese", help="emit a Veronese flag as JSON"))
    p.add_argument("point", help="'inf' or a complex literal like 0.5+2i")
    p.add_argument("--n", type=int, required=True)

    p = _common(sub.add_parser("dilog", help="Bloch-Wigner dilogarithm value"))
    p.add_argument("z", help="complex literal or 'inf'")

    p = _common(sub.add_parser("fixtures", help="write the bundled example files"))
    p.add_argument("--out", default="fixtures", help="output directory")
    p.add_argument("--list", action="store_true", help="list fixture names only")
    return top


def cmd_eval(args) -> int:
    try:
        with open(args.file) as fh:
            obj = json.load(fh)
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except json.JSONDecodeError as exc:
        print(f"{args.file}: invalid JSON: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    try:
        quad = flag_quad_from_json(obj, path=args.file)
    except InputInvariantError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVARIANT
    except SchemaError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_SCHEMA
    value = borel_bn(quad)
    n = quad[0].n
    bound = sharp_bound(n)
    if args.json:
        print(json.dumps({"value": value, "n": n, "bound": bound,
                          "normalized": value / bound}, sort_keys=True))
    else:
        print(f"{value:.15g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = args.tol if args.tol is not None else _env_tol()
    report, residuals = run_property(
        args.property, n=args.n, samples=args.samples, seed=args.seed,
        tol=tol, exact=args.exact or None, workers=max(1, args.threads))
    payload = report.to_dict()
    payload["n"] = args.n
    payload["tol"] = tol if tol is not None else DEFAULT_TOLERANCES[args.property]
    print(json.dumps(payload, sort_keys=True))
    if args.report_dir:
        from .report import write_residual_report
        paths = write_residual_report(args.report_dir, args.property,
                                      residuals, payload["tol"])
        for p in paths:
            print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK if report.failures == 0 else EXIT_PROPERTY_FAILURE


def cmd_invariant(args) -> int:
    try:
        dc = load(args.file)
        if args.lift is not None:
            dc = lift_veronese(dc, args.lift)
        contributions = tetrahedron_contributions(dc)
    except InputInvariantError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVARIANT
    except SchemaError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_SCHEMA
    total = sum(contributions)
    out = {"value": total, "n": dc.n, "tetrahedra": len(dc.tetrahedra)}
    if dc.volume is not None:
        ratio = maximality_ratio(total, dc.volume, dc.n)
        out.update({"volume": dc.volume, "lambda": ratio.lam,
                    "normalized": ratio.normalized, "verdict": ratio.verdict,
                    "consistent": ratio.consistent})
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"B = {total:.15g}  ({len(dc.tetrahedra)} tetrahedra, n = {dc.n})")
        if dc.volume is not None:
            print(f"lambda = B / volume = {out['lambda']:.15g}")
            print(f"normalized = {out['normalized']:.15g}  verdict: {out['verdict']}")
            if not out["consistent"]:
                print("warning: value exceeds the sharp bound; "
                      "input is inconsistent", file=sys.stderr)
        else:
            print("volume metadata absent; lambda omitted")
    if args.report_dir:
        from .report import write_invariant_report
        name = os.path.splitext(os.path.basename(args.file))[0]
        for p in write_invariant_report(args.report_dir, name, contributions,
                                        total):
            print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK


def cmd_veronese(args) -> int:
    try:
        point = parse_point_literal(args.point, "point")
    except SchemaError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_SCHEMA
    if args.n < 2:
        print("--n must be at least 2", file=sys.stderr)
        return EXIT_SCHEMA
    flag = veronese_flag(point, args.n)
    print(json.dumps(flag_to_json(flag)))
    return EXIT_OK


def cmd_dilog(args) -> int:
    from .volume import dilog_bw
    try:
        point = parse_point_literal(args.z, "z")
    except SchemaError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_SCHEMA
    value = dilog_bw(point.affine())
    if args.json:
        print(json.dumps({"z": args.z, "value": value}))
    else:
        print(f"{value:.15g}")
    return EXIT_OK


def cmd_fixtures(args) -> int:
    if args.list:
        for name in FIXTURE_NAMES:
            print(name)
        return EXIT_OK
    os.makedirs(args.out, exist_ok=True)
    for name in FIXTURE_NAMES:
        data = resources.files("borelinv.fixtures").joinpath(name).read_text()
        path = os.path.join(args.out, name)
        with open(path, "w") as fh:
            fh.write(data)
        print(f"wrote {path}")
    return EXIT_OK


_HANDLERS = {
    "eval": cmd_eval,
    "verify": cmd_verify,
    "invariant": cmd_invariant,
    "veronese": cmd_veronese,
    "dilog": cmd_dilog,
    "fixtures": cmd_fixtures,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return _HANDLERS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
