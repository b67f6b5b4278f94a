"""Command-line interface: verify, table, op."""

import argparse
import json
import logging
import sys

from sympy import factorint, isprime, primerange

from .cache import Cache, resolve_cache_dir
from .errors import MtorsError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64

log = logging.getLogger("mtors")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser():
    parser = _Parser(prog="mtors", description="Rational torsion of J_1(p) for prime p")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    common.add_argument("--quiet", action="store_true", help="suppress stage timings")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pv = sub.add_parser("verify", parents=[common],
                        help="compute and check the torsion of J_1(p)")
    pv.add_argument("p", type=int)
    pv.add_argument("--q", default="auto", help="'auto' or comma-separated odd primes")
    pv.add_argument("--d", default="auto", help="'auto' or a generator of (Z/p)^x/{+-1}")
    pv.add_argument("--json", dest="json_path", help="also write the JSON report here")
    pv.add_argument("--cache", help="cache directory (else $MTORS_CACHE, else ./.mtors-cache)")
    pv.add_argument("--factor", action="store_true", help="print factored invariants")
    pv.add_argument("--deterministic", action="store_true",
                    help="single-threaded, bit-reproducible run")

    pt = sub.add_parser("table", parents=[common], help="one row per prime in a range")
    pt.add_argument("--from", dest="p_from", type=int, required=True)
    pt.add_argument("--to", dest="p_to", type=int, required=True)
    pt.add_argument("--format", choices=("md", "csv", "json"), default="md")
    pt.add_argument("--jobs", type=int, default=1, help="concurrent per-prime workers")
    pt.add_argument("--cache", help="cache directory")
    pt.add_argument("--factor", action="store_true")
    pt.add_argument("--deterministic", action="store_true")

    po = sub.add_parser("op", parents=[common], help="write an exact operator matrix")
    po.add_argument("p", type=int)
    po.add_argument("--name", required=True,
                    help="T<n> | diamond:<d> | star | eta:<q>")
    po.add_argument("--out", help="output file (default stdout)")
    po.add_argument("--cache", help="cache directory")
    return parser


def _chain_str(invariants, factor=False):
    if not invariants:
        return "trivial"
    if not factor:
        return "[" + " | ".join(str(v) for v in invariants) + "]"
    parts = []
    for v in invariants:
        facs = factorint(v)
        txt = "·".join(
            f"{q}^{e}" if e > 1 else f"{q}" for q, e in sorted(facs.items())
        )
        parts.append(txt)
    return "[" + " | ".join(parts) + "]"


def _check_prime(parser, p):
    if p < 5 or not isprime(p):
        print(f"mtors: error: p must be a prime >= 5, got {p}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_qs(parser, spec):
    if spec == "auto":
        return None
    try:
        qs = [int(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError:
        print(f"mtors: error: bad --q value {spec!r}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE) from None
    if not qs or any(q < 3 or not isprime(q) or q % 2 == 0 for q in qs):
        print("mtors: error: --q needs odd primes", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    return qs


def _report_key(p, qs, d):
    if qs is None and d is None:
        return f"gamma1_{p}/report.json"
    qpart = "auto" if qs is None else ",".join(str(q) for q in qs)
    dpart = "auto" if d is None else str(d)
    return f"gamma1_{p}/report_q{qpart}_d{dpart}.json"


def _run_verify(p, qs, d, cache):
    from .pipeline import verify
    from .serialize import report_from_json, report_to_json

    key = _report_key(p, qs, d)
    text = cache.read(key)
    if text is not None:
        log.info("p=%d: cached report", p)
        return report_from_json(text), text
    report = verify(p, qs=qs, d=d, cache=cache)
    text = report_to_json(report)
    cache.write(key, text)
    return report, text


def _print_report(report, factor):
    p = report.p
    out = [f"p = {p}"]
    if report.qs:
        out.append(f"q used: {report.qs}   d = {report.d}")
    else:
        out.append(f"d = {report.d}")
    if report.eta_skipped:
        out.append(f"eta primes skipped (singular on V): {report.eta_skipped}")
    out.append(f"M'({p})      = {_chain_str(report.m_prime, factor)}")
    out.append(f"C({p})       = {_chain_str(report.cuspidal, factor)}")
    out.append(f"C({p})^Gal   = {_chain_str(report.galois_invariant, factor)}")
    out.append(f"C({p})^Q     = {_chain_str(report.rational_cusp, factor)}")
    out.append(f"J_1({p})(Q)_tors = {_chain_str(report.torsion, factor)}")
    out.append(
        "checks: M'_in_C={} CQ_eq_CGal={} diamond_cross_check={} annihilation={}".format(
            report.mprime_in_c, report.cq_eq_cgal, report.diamond_agrees,
            report.annihilation_ok,
        )
    )
    if report.status != "ok":
        out.append(f"status: INCONCLUSIVE ({report.error})")
    out.append(f"time: {report.timings.get('total', 0.0)} s")
    print("\n".join(out))


def _exit_code(report):
    if report.status != "ok":
        return EXIT_INCONCLUSIVE
    if report.mprime_in_c and report.cq_eq_cgal:
        return EXIT_OK
    return EXIT_INCONCLUSIVE


def cmd_verify(args):
    _check_prime(None, args.p)
    qs = _parse_qs(None, args.q)
    d = None if args.d == "auto" else int(args.d)
    cache = Cache(resolve_cache_dir(args.cache))
    report, text = _run_verify(args.p, qs, d, cache)
    _print_report(report, args.factor)
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return _exit_code(report)


def _table_job(task):
    p, cache_dir = task
    cache = Cache(cache_dir)
    try:
        report, _ = _run_verify(p, None, None, cache)
        return p, report, None
    except MtorsError as exc:  # pragma: no cover - defensive
        return p, None, str(exc)


def cmd_table(args):
    if args.p_from > args.p_to:
        rows = []
    else:
        rows = [p for p in primerange(max(args.p_from, 5), args.p_to + 1)]
    cache_dir = resolve_cache_dir(args.cache)
    jobs = 1 if args.deterministic else max(1, args.jobs)
    results = {}
    if jobs > 1 and len(rows) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for p, report, err in pool.map(_table_job, [(p, cache_dir) for p in rows]):
                results[p] = (report, err)
    else:
        for p in rows:
            results[p] = _table_job((p, cache_dir))[1:]
    all_ok = True
    table_rows = []
    for p in rows:
        report, err = results[p]
        if report is None:
            table_rows.append((p, f"ERROR: {err}", "", "", ""))
            all_ok = False
            continue
        chain = _chain_str(report.torsion, args.factor)
        if report.status != "ok":
            chain = f"INCONCLUSIVE ({report.error})"
            all_ok = False
        q0 = report.qs[0] if report.qs else ""
        table_rows.append((p, chain, q0, report.d, report.timings.get("total", "")))
    _emit_table(table_rows, args.format)
    return EXIT_OK if all_ok else EXIT_INCONCLUSIVE


def _emit_table(rows, fmt):
    header = ("p", "torsion", "q", "d", "time_s")
    if fmt == "md":
        print("| " + " | ".join(header) + " |")
        print("|" + "|".join("---" for _ in header) + "|")
        for row in rows:
            print("| " + " | ".join(str(v) for v in row) + " |")
    elif fmt == "csv":
        import csv

        w = csv.writer(sys.stdout)
        w.writerow(header)
        for row in rows:
            w.writerow(row)
    else:
        payload = [dict(zip(header, row)) for row in rows]
        print(json.dumps(payload, indent=2, sort_keys=True))


def cmd_op(args):
    _check_prime(None, args.p)
    name = args.name
    valid = (
        name == "star"
        or (name.startswith("T") and name[1:].isdigit() and int(name[1:]) >= 1)
        or (name.startswith("diamond:") and name.split(":", 1)[1].lstrip("-").isdigit())
        or (name.startswith("eta:") and name.split(":", 1)[1].isdigit())
    )
    if not valid:
        print(f"mtors: error: unknown operator {name!r}", file=sys.stderr)
        return EXIT_USAGE
    from .pipeline import build_model
    from .serialize import dump_matrix

    cache = Cache(resolve_cache_dir(args.cache))
    model = build_model(args.p, cache)
    op = model.operator(name)
    text = dump_matrix(op.matrix)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else (
        logging.WARNING if args.quiet else logging.INFO
    )
    logging.basicConfig(level=level, format="%(message)s", stream=sys.stderr)
    try:
        if args.command == "verify":
            code = cmd_verify(args)
        elif args.command == "table":
            code = cmd_table(args)
        else:
            code = cmd_op(args)
    except SystemExit:
        raise
    except MtorsError as exc:
        print(f"mtors: error: {exc}", file=sys.stderr)
        code = EXIT_ERROR
    except OSError as exc:
        print(f"mtors: error: {exc}", file=sys.stderr)
        code = EXIT_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())
