"""Command-line front end.

Exit codes: 0 on success, 2 for domain errors (an error JSON is emitted),
3 when a budget is exceeded.  ``--rep demo:NAME`` loads a bundled example.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import charvar, crossratio, degeneration
from .errors import BudgetExceeded, DomainError, ParseError
from .matrix import budget, parse_words, representation_from_json
from .spectra import WeylNorm, length_table_csv, norm_value_str

EXIT_OK, EXIT_DOMAIN, EXIT_BUDGET = 0, 2, 3


def _q(x):
    return norm_value_str(Fraction(x))


def _vec(v):
    return {"exact": [_q(x) for x in v], "decimal": [float(x) for x in v]}


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_json(source):
    if source.startswith("demo:"):
        res = resources.files("valcone").joinpath("data").joinpath(source[5:] + ".json")
        if not res.is_file():
            raise ParseError(f"no bundled example {source[5:]!r}")
        text = res.read_text()
    else:
        path = Path(source)
        if not path.exists():
            raise ParseError(f"no such file: {source}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc}") from exc


def _load_rep(source):
    if source is None:
        raise ParseError("--rep is required")
    return representation_from_json(_load_json(source))


def _words(args, rep):
    if args.words:
        return parse_words(args.words)
    return rep.generating_set()


def _norms(args):
    names = args.norm.split(",") if args.norm else ["euclid"]
    return [WeylNorm.parse(x.strip()) for x in names]


def _csv(rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------- commands


def cmd_length(args):
    rep = _load_rep(args.rep)
    words = _words(args, rep)
    norms = _norms(args)
    if args.format == "csv":
        return {"length.csv": length_table_csv(rep, words, norms)}
    L = degeneration.length_function(rep, words, norms)
    out = {
        "denominator": L.denominator,
        "words": {
            k: {**_vec(v), "norms": {nm: norm_value_str(L.scalarizations[nm][k]) for nm in sorted(L.scalarizations)}}
            for k, v in L.values.items()
        },
    }
    return {"length.json": _dumps(out)}


def cmd_theta(args):
    rep = _load_rep(args.rep)
    th = degeneration.theta(rep, _words(args, rep))
    if args.format == "csv":
        rows = [["word"] + [f"theta{i + 1}" for i in range(rep.n)] + ["denominator"]]
        rows += [[k] + [_q(x) for x in v] + [_q(th.denominator)] for k, v in th.normalized.items()]
        return {"theta.csv": _csv(rows)}
    out = {
        "denominator": _q(th.denominator),
        "trace_sum": str(th.trace_sum),
        "theta": {k: _vec(v) for k, v in th.normalized.items()},
    }
    return {"theta.json": _dumps(out)}


def cmd_degenerate(args):
    rep = _load_rep(args.rep)
    params = [float(x) for x in (args.specialize or "1e2,1e4,1e6").split(",")]
    tr = degeneration.cone_consistency(rep, _words(args, rep), params)
    rows = [["s", "word"] + [f"x{i + 1}" for i in range(rep.n)] + ["deviation"]]
    for s, w, *rest in tr.csv_rows():
        rows.append([f"{s:g}", w] + [repr(float(x)) for x in rest])
    L = degeneration.LengthFunction(list(tr.exact), tr.exact)
    summary = {
        "params": params,
        "scales": [smp.scale for smp in tr.samples],
        "exact": {k: _vec(v) for k, v in tr.exact.items()},
        "denominator": L.denominator,
        "max_deviation": [tr.max_deviation(i) for i in range(len(tr.samples))],
        "extrapolated": {k: list(v) for k, v in tr.extrapolation.items()},
        "extrapolation_error": tr.extrapolation_error,
    }
    if args.format == "json":
        return {"degenerate_summary.json": _dumps(summary)}
    return {"degenerate.csv": _csv(rows), "degenerate_summary.json": _dumps(summary)}


def _field_json(x):
    out = {"text": str(x)}
    if x.is_rational():
        out["exact"] = _q(x.to_fraction())
        out["decimal"] = float(x.to_fraction())
    return out


def cmd_tracecoords(args):
    rep = _load_rep(args.rep)
    max_words = args.budget if args.budget else charvar.DEFAULT_MAX_WORDS
    tc = charvar.trace_coordinates(rep, max_words=max_words)
    if args.format == "csv":
        rows = [["word", "trace"]] + [[k, str(v)] for k, v in tc.entries.items()]
        return {"tracecoords.csv": _csv(rows)}
    return {"tracecoords.json": _dumps({k: _field_json(v) for k, v in tc.entries.items()})}


def cmd_minvec(args):
    rep = _load_rep(args.rep)
    report = charvar.minimality_residual(rep)
    out = {
        "residuals": [str(r) for r in report.residuals],
        "minimal": report.max_abs == 0,
        "norm_sq": str(report.norm_sq),
    }
    if rep.field_kind == "real":
        tol = args.tol if args.tol is not None else 1e-8
        mats, flow = charvar.minimize_real(rep.to_numpy(), tol=tol)
        out["flow"] = {
            "iterations": flow.iterations,
            "max_residual": flow.max_abs,
            "norm_sq": flow.norm_sq,
            "generators": {k: [[repr(float(x)) for x in row] for row in mats[k]] for k in sorted(mats)},
        }
    return {"minvec.json": _dumps(out)}


def cmd_crossratio(args):
    rep = _load_rep(args.rep)
    gamma = args.gamma or rep.names()[0]
    flags = _load_json(args.flags) if args.flags else {}
    if "attracting" in flags and "repelling" in flags:
        att = crossratio.Flag.from_json(flags["attracting"])
        rpl = crossratio.Flag.from_json(flags["repelling"])
    else:
        att, rpl = crossratio.fixed_flags(rep, gamma)
    if "x" in flags:
        x = crossratio.Flag.from_json(flags["x"])
    else:
        x = crossratio.Flag.from_columns([[1] * rep.n])
    out = {"gamma": gamma}
    g = rep.eval_word(gamma)
    gx = x.act(g)
    cr = crossratio.cr_k(rpl, x, gx, att).value
    out["cross_ratio"] = str(cr)
    if args.check_period:
        res = crossratio.period(rep, gamma, att, rpl, x)
        out.update(
            k=res.k,
            period=_q(res.period),
            period_decimal=float(res.period),
            jordan_chi=_q(res.jordan_chi),
            period_matches_jordan=res.matches,
        )
    return {"crossratio.json": _dumps(out)}


def cmd_demo(args):
    return {"pinch_twist.json": _dumps(degeneration.pinch_twist_demo())}


COMMANDS = {
    "length": cmd_length,
    "theta": cmd_theta,
    "degenerate": cmd_degenerate,
    "tracecoords": cmd_tracecoords,
    "minvec": cmd_minvec,
    "crossratio": cmd_crossratio,
    "demo-pinch-twist": cmd_demo,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="valcone", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--rep", help="representation JSON file or demo:NAME")
        p.add_argument("--words", help='comma-separated words, e.g. "a,a a,a b^-1"')
        p.add_argument("--norm", help="comma-separated norms: euclid, sup, l1, roots, weight:k, lp:p")
        p.add_argument("--specialize", help="comma-separated parameters s1<s2<...")
        p.add_argument("--tol", type=float)
        p.add_argument("--budget", type=int, help="term budget for matrix products")
        p.add_argument("--out", help="directory for artifacts (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv" if name in ("length", "degenerate") else "json")
        if name == "crossratio":
            p.add_argument("--gamma", help="group word")
            p.add_argument("--flags", help="flags JSON file or demo:NAME")
            p.add_argument("--check-period", action="store_true")
    return parser


def _emit(artifacts, out, stream):
    if out:
        d = Path(out)
        d.mkdir(parents=True, exist_ok=True)
        for name in sorted(artifacts):
            (d / name).write_text(artifacts[name])
    else:
        for name in sorted(artifacts):
            stream.write(artifacts[name])


def run(argv=None, stdout=None):
    """Parse ``argv``, run the command and return the exit code."""
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.budget and args.command != "tracecoords":
            with budget(args.budget):
                artifacts = COMMANDS[args.command](args)
        else:
            artifacts = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        _emit({"error.json": _dumps({"error": "BudgetExceeded", "message": str(exc)})}, args.out, stdout)
        return EXIT_BUDGET
    except DomainError as exc:
        _emit({"error.json": _dumps({"error": type(exc).__name__, "message": str(exc)})}, args.out, stdout)
        return EXIT_DOMAIN
    _emit(artifacts, args.out, stdout)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
