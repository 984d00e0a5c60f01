"""Command-line interface: batch access to every pipeline and check.

Exit codes: 0 all requested checks pass, 1 a verification failed,
2 usage or parse errors.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv as csv_mod
import io
import json
import os
import sys
from fractions import Fraction

from . import classdata, cliffordcm, fockoracle, lattice, modgroups, moonshine
from .errors import MoonshineError, ParseError
from .frameshape import parse as parse_shape

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _emit(obj, fmt: str):
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        _emit_text(obj)


def _emit_text(obj, indent=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                print("%s%s:" % (indent, k))
                _emit_text(v, indent + "  ")
            else:
                print("%s%s: %s" % (indent, k, v))
    elif isinstance(obj, list):
        for v in obj:
            _emit_text(v, indent)
            if isinstance(v, dict):
                print()
    else:
        print("%s%s" % (indent, obj))


def _jobs(args) -> int:
    if getattr(args, "jobs", None):
        return args.jobs
    return int(os.environ.get("MOONSHINE_JOBS", "1"))


def _parallel_map(fn, items, jobs):
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _resolve_classes(selector: str):
    if selector == "all":
        return list(classdata.registry())
    return [classdata.lookup(selector)]


# -- subcommand handlers -----------------------------------------------------


def cmd_table(args) -> int:
    rows = [rec.to_json() for rec in classdata.registry()]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv_mod.DictWriter(buf, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        _emit(rows, args.format)
    return EXIT_OK


def cmd_series(args) -> int:
    order = Fraction(args.order)
    if args.shape:
        pi = parse_shape(args.shape)
        name = args.shape
        if args.which == "tw":
            series = moonshine.T_s_tw(pi, order, c_value=args.c_value or 0)
        else:
            series = moonshine.T_s(pi, order)
    else:
        rec = classdata.lookup(args.klass)
        name = rec.co0_name
        series = (
            moonshine.T_s_tw(rec, order)
            if args.which == "tw"
            else moonshine.T_s(rec.frame_shape, order)
        )
    if args.format == "json":
        _emit({"class": name, "which": args.which, "series": series.to_json()}, "json")
    else:
        print(series.pretty())
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = []
    if args.what == "delta":
        reports.append(moonshine.verify_delta_identity(args.order or 50))
    elif args.what == "hecke":
        _, rep = moonshine.verify_hecke(args.order or 40)
        reports.append(rep)
    elif args.what == "lemma":
        names = [r.co0_name for r in _resolve_classes(args.klass or "all")]
        order = args.order or 25
        reports.extend(
            _parallel_map(_lemma_worker, [(n, order) for n in names], _jobs(args))
        )
    elif args.what == "normalization":
        reports.extend(moonshine.normalization_reports(args.order or 6))
    out = [r.to_json() for r in reports]
    ok = all(r.passed for r in reports)
    if args.format == "json":
        _emit({"reports": out, "pass": ok}, "json")
    else:
        for r in reports:
            print("%-24s order %-6s residual %s  %s" % (
                r.name, r.checked_order, r.max_residual, "pass" if r.passed else "FAIL"))
        print("summary: %d/%d pass" % (sum(r.passed for r in reports), len(reports)))
    return EXIT_OK if ok else EXIT_FAIL


def _lemma_worker(item):
    name, order = item
    _, rep = moonshine.solve_c_neg(classdata.lookup(name), order)
    return rep


def cmd_oracle(args) -> int:
    if args.what == "spinor":
        rec = classdata.lookup(args.klass)
        closed, subset = cliffordcm.class_supertraces(rec.frame_shape)
        match = closed == subset
        closed_q = closed.to_rational()
        table_match = abs(closed_q) == abs(rec.c_hat_g)
        payload = {
            "class": rec.co0_name,
            "closed_form": str(closed_q),
            "subset_oracle": str(subset.to_rational()),
            "table_value": rec.c_hat_g,
            "oracle_matches_closed": match,
            "magnitude_matches_table": table_match,
        }
        _emit(payload, args.format)
        return EXIT_OK if (match and table_match) else EXIT_FAIL

    # fock: mode-product oracle vs the eta-quotient formulas
    degree = Fraction(args.max_degree)
    if args.klass in ("identity", "1A"):
        pi, c_val, name = parse_shape("1^24"), 0, "identity"
    else:
        rec = classdata.lookup(args.klass)
        pi, c_val, name = rec.frame_shape, rec.c_hat_g, rec.co0_name
    ms_u = fockoracle.ModeSystem.from_shape(pi, fockoracle.UNTWISTED, degree)
    ms_t = fockoracle.ModeSystem.from_shape(pi, fockoracle.TWISTED, degree)
    oracle_u = fockoracle.untwisted_supertrace(ms_u)
    oracle_t = fockoracle.twisted_supertrace(ms_t, c_val)
    formula_u = moonshine.t_tilde(pi, degree)
    formula_t = pi.eta_quotient(1, degree + 1) * c_val
    ok_u = oracle_u.agrees_with(formula_u)
    ok_t = oracle_t.agrees_with(formula_t)
    payload = {
        "class": name,
        "max_degree": str(degree),
        "untwisted_match": ok_u,
        "twisted_match": ok_t,
        "untwisted_oracle": oracle_u.pretty(),
        "untwisted_formula": formula_u.pretty(),
        "twisted_oracle": oracle_t.pretty(),
        "twisted_formula": formula_t.pretty(),
    }
    _emit(payload, args.format)
    return EXIT_OK if (ok_u and ok_t) else EXIT_FAIL


def cmd_lattice(args) -> int:
    code = lattice.build_golay()
    if args.what == "golay-weights":
        dist = code.weight_distribution()
        payload = {"weights": {str(k): v for k, v in sorted(dist.items())}}
        _emit(payload, args.format)
        expected = {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
        return EXIT_OK if dist == expected else EXIT_FAIL
    lat = lattice.build_leech(code)
    if args.what == "leech-shell":
        count = lat.shell_count(args.norm)
        _emit({"norm": args.norm, "count": count}, args.format)
        return EXIT_OK
    if args.what == "frame-check":
        lattice.coordinate_frame(lat)
        _emit({"frame": "24 orthogonal norm-8 vectors, congruent mod 2*lattice", "pass": True}, args.format)
        return EXIT_OK
    return EXIT_USAGE


def cmd_invariance(args) -> int:
    recs = _resolve_classes(args.klass)
    jobs = _jobs(args)
    items = [(r.co0_name, args.points, args.tol, args.seed, args.samples) for r in recs]
    reports = _parallel_map(_invariance_worker, items, jobs)
    ok = all(r["pass"] for r in reports)
    if args.format == "json":
        _emit({"reports": reports, "pass": ok}, "json")
    else:
        for r in reports:
            print("%-5s %-14s max_dev %.3e order %s/%s  %s" % (
                r["class"], r["label"], r["max_dev"], r["order"][0], r["order"][1],
                "pass" if r["pass"] else "FAIL"))
        print("summary: %d/%d pass" % (sum(r["pass"] for r in reports), len(reports)))
    return EXIT_OK if ok else EXIT_FAIL


def _invariance_worker(item):
    name, points, tol, seed, samples = item
    rec = classdata.lookup(name)
    return modgroups.class_invariance_check(
        rec, points=points, tol=tol, seed=seed, samples=samples
    )


def cmd_n1(args) -> int:
    code = lattice.build_golay()
    lat = lattice.build_leech(code)
    frame = lattice.coordinate_frame(lat)
    lift = cliffordcm.golay_lift_section(code, frame)
    report = cliffordcm.n1_checks(lift, seed=args.seed, orth_samples=args.samples)
    payload = {
        k: (str(v) if not isinstance(v, (bool, int)) else v) for k, v in report.items()
    }
    _emit(payload, args.format)
    return EXIT_OK if report.get("passed") else EXIT_FAIL


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--jobs", type=int, default=0, help="parallel workers for sweeps")

    top = argparse.ArgumentParser(
        prog="conway-moonshine",
        parents=[common],
        description="Exact computations and checks for the Conway-group "
        "trace functions, their eta-quotient identities, the spinor module, "
        "and the Golay/Leech structures underneath them.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    add("table", help="emit the embedded class table")

    p = add("series", help="q-expansions of the trace functions")
    p.add_argument("--class", dest="klass", help="class name, e.g. 2A")
    p.add_argument("--shape", help="explicit Frame shape, e.g. 2^24/1^24")
    p.add_argument("--which", choices=("s", "tw"), default="s")
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--c-value", type=int, default=None)

    p = add("verify", help="exact identity checks")
    p.add_argument("what", choices=("lemma", "delta", "hecke", "normalization"))
    p.add_argument("--class", dest="klass", default="all")
    p.add_argument("--order", type=int, default=None)

    p = add("oracle", help="independent cross-checks")
    p.add_argument("what", choices=("fock", "spinor"))
    p.add_argument("--class", dest="klass", required=True)
    p.add_argument("--max-degree", type=int, default=6)

    p = add("lattice", help="Golay and Leech verifications")
    p.add_argument("what", choices=("golay-weights", "leech-shell", "frame-check"))
    p.add_argument("--norm", type=int, default=4)

    p = add("invariance", help="numeric modular invariance")
    p.add_argument("--class", dest="klass", default="all")
    p.add_argument("--samples", type=int, default=12, help="group elements per class")
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=2024)

    p = add("n1", help="idempotent and orthogonality checks")
    p.add_argument("what", choices=("check",))
    p.add_argument("--seed", type=int, default=11)
    p.add_argument("--samples", type=int, default=220)

    return top


_HANDLERS = {
    "table": cmd_table,
    "series": cmd_series,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "lattice": cmd_lattice,
    "invariance": cmd_invariance,
    "n1": cmd_n1,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.command == "series" and not (args.klass or args.shape):
        print("series needs --class or --shape", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _HANDLERS[args.command](args)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except MoonshineError as exc:
        if type(exc).__name__ in ("NotFoundError", "ValidationError"):
            print("error: %s" % exc, file=sys.stderr)
            return EXIT_USAGE
        print("verification failure: %s" % exc, file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
