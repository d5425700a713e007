"""``polyred`` command line: simulate, enumerate, factor, analytic, figure."""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from pathlib import Path

from polyred import analytic, exhaustive, factorint, figures, mcengine, models
from polyred.bigpoly import IntPolynomial


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--sigma", type=float, default=mcengine.DEFAULT_SIGMA)
    p.add_argument("--out", default=None, help="output file (directory for figure)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    p.add_argument("--paper-scale", action="store_true",
                   help="use the full-scale trial counts instead of desk defaults")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="polyred", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", parents=[common], help="Monte Carlo run of a model")
    s.add_argument("--model", required=True, action="append",
                   help="family:degree[:K]; repeatable")
    s.add_argument("--method", choices=[m.value for m in mcengine.Method],
                   default=mcengine.Method.CONSERVATIVE.value)

    e = sub.add_parser("enumerate", parents=[common], help="exact probabilities by enumeration")
    e.add_argument("--model", required=True, action="append")
    e.add_argument("--cap", type=int, default=models.DEFAULT_ENUMERATION_CAP)

    f = sub.add_parser("factor", parents=[common], help="factor a polynomial over Q")
    f.add_argument("poly", help="comma-separated coefficients, constant term first")

    a = sub.add_parser("analytic", parents=[common], help="closed-form values")
    a.add_argument("formula", choices=sorted([*analytic.FORMULAS, "slab"]))
    a.add_argument("--degree", "-d", type=int, required=True)

    g = sub.add_parser("figure", parents=[common], help="reproduce a figure as CSV + SVG")
    g.add_argument("figure_id", choices=[fid.value for fid in figures.FigureId] + ["all"])
    g.add_argument("--log-y", action="store_true", default=None)
    g.add_argument("--quiet", action="store_true")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_text(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_simulate(args) -> int:
    trials = args.trials or 100_000
    results = []
    for text in args.model:
        spec = models.ModelSpec.parse(text)
        st = mcengine.run(spec, trials, args.seed, args.workers)
        ci = mcengine.confidence(st, args.sigma, args.method)
        entry = st.as_dict()
        entry["reducible_prob"] = ci.as_dict()
        try:
            entry["ratio"] = mcengine.heuristic_ratio(st, args.sigma, args.method).as_dict()
            entry["baseline"] = str(mcengine.baseline(spec))
        except mcengine.BaselineUndefined as exc:
            entry["ratio"] = None
            entry["ratio_note"] = str(exc)
        results.append((spec, st, ci, entry))
    if args.fmt == "csv":
        cols = ["model", "family", "degree", "K", "seed", "trials", "reducible", "linear_factor",
                "constant_zero", "p_hat", "ci_halfwidth", "sigma", "ratio", "ratio_halfwidth"]
        rows = []
        for spec, st, ci, entry in results:
            r = entry["ratio"] or {}
            rows.append({
                "model": str(spec), "family": spec.family.value, "degree": spec.degree,
                "K": "" if spec.support is None else spec.support, "seed": st.seed,
                "trials": st.trials, "reducible": st.reducible, "linear_factor": st.linear_factor,
                "constant_zero": st.constant_zero, "p_hat": repr(ci.point),
                "ci_halfwidth": repr(ci.halfwidth), "sigma": args.sigma,
                "ratio": repr(r["point"]) if r else "", "ratio_halfwidth": repr(r["halfwidth"]) if r else "",
            })
        _emit(_csv_text(rows, cols), args.out)
    else:
        payload = [e for *_, e in results]
        _emit(_json_text(payload[0] if len(payload) == 1 else payload), args.out)
    return 0


def cmd_enumerate(args) -> int:
    results = []
    for text in args.model:
        spec = models.ModelSpec.parse(text)
        results.append(exhaustive.exact(spec, cap=args.cap, workers=args.workers))
    if args.fmt == "csv":
        cols = ["model", "support_size", "reducible_prob", "linear_factor_prob", "constant_zero_prob",
                "reducible_exact", "linear_factor_exact"]
        rows = [{
            "model": str(st.model), "support_size": st.support_size,
            "reducible_prob": repr(float(st.reducible_prob)),
            "linear_factor_prob": repr(float(st.linear_factor_prob)),
            "constant_zero_prob": repr(float(st.constant_zero_prob)),
            "reducible_exact": str(st.reducible_prob), "linear_factor_exact": str(st.linear_factor_prob),
        } for st in results]
        _emit(_csv_text(rows, cols), args.out)
    else:
        payload = [st.as_dict() for st in results]
        _emit(_json_text(payload[0] if len(payload) == 1 else payload), args.out)
    return 0


def cmd_factor(args) -> int:
    p = IntPolynomial.parse(args.poly)
    report = factorint.factor(p)
    _emit(_json_text(report.as_dict()), args.out)
    return 0


def cmd_analytic(args) -> int:
    v = analytic.evaluate_formula(args.formula, args.degree)
    _emit(_json_text(v.as_dict()), args.out)
    return 0


def cmd_figure(args) -> int:
    ids = [f.value for f in figures.FigureId] if args.figure_id == "all" else [args.figure_id]
    out = args.out or "figures"
    log = None if args.quiet else (lambda msg: print(msg, file=sys.stderr, flush=True))
    written = []
    for fid in ids:
        csv_path, svg_path = figures.figure(
            fid, out, seed=args.seed, workers=args.workers, paper_scale=args.paper_scale,
            trials=args.trials, log_y=args.log_y, progress=log,
        )
        written.append({"figure_id": fid, "seed": args.seed, "csv": str(csv_path), "svg": str(svg_path)})
    print(_json_text(written if len(written) > 1 else written[0]), end="")
    return 0


COMMANDS = {
    "simulate": cmd_simulate,
    "enumerate": cmd_enumerate,
    "factor": cmd_factor,
    "analytic": cmd_analytic,
    "figure": cmd_figure,
}


def _protect_negative_polys(argv: list[str]) -> list[str]:
    # "-1,0,1" would otherwise be read as an option
    if argv and argv[0] == "factor" and "--" not in argv:
        for i, a in enumerate(argv[1:], 1):
            if re.fullmatch(r"-\d[\d,\s-]*", a):
                return argv[:i] + ["--"] + argv[i:]
    return argv


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_protect_negative_polys(argv))
    if args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
