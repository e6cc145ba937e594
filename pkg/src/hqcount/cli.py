"""Command-line front end: H_q tables, verification suites, cell tables,
and the field-table cache.

Exit codes: 0 success (all verifications equal), 1 at least one
verification inequality (the failing reports are printed), 2 usage or
parameter errors.  All output is buffered and emitted once.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import os
import sys
from dataclasses import dataclass, field

from . import catalog as cat
from .cyclo import CycloNum
from .errors import HqcountError, SingularFiber
from .field import (DEFAULT_MAX_Q, build_field, build_field_cached,
                    save_field)
from .gauss import hasse_davenport_defect, stickelberger_sigma, table_for
from .hyper import (CyclotomicData, HGParams, cyclotomic_from_params,
                    h_general, h_over_q, landau_bound,
                    params_from_cyclotomic, parse_fractions, parse_ints)
from .report import CountReport, render_number, report_serialize
from .toric import cell_gcd, cell_sum_identity, enumerate_cells, p_rs
from .variety import alt_variety_count, completed_count, curve_counts

VERIFY_SUITES = ("main", "hd", "stickelberger", "rewrite", "ono",
                 "denominator", "cells", "alt")


@dataclass
class RunConfig:
    command: str
    fields: list[int] = field(default_factory=list)
    params: HGParams | CyclotomicData | None = None
    selection: str = "all"          # t / lambda selection
    fmt: str = "text"
    cache_dir: str | None = None
    jobs: int = 1
    q_cap: int = DEFAULT_MAX_Q
    general: bool = False
    timing: bool = False


def _cache_dir(args) -> str | None:
    if getattr(args, "cache_dir", None):
        return args.cache_dir
    return os.environ.get("HQ_CACHE_DIR")


def _get_field(q: int, config: RunConfig):
    if config.cache_dir:
        return build_field_cached(q, config.cache_dir, max_q=config.q_cap)
    return build_field(q, max_q=config.q_cap)


def _parse_params(args) -> HGParams | CyclotomicData | None:
    """Validate the parameter spec before any computation starts."""
    if getattr(args, "params", None):
        from .hyper import parse_param_string
        return parse_param_string(args.params)
    has_pq = getattr(args, "p", None) and getattr(args, "q", None)
    has_ab = getattr(args, "alpha", None) and getattr(args, "beta", None)
    if has_pq:
        return params_from_cyclotomic(parse_ints(args.p), parse_ints(args.q))
    if has_ab:
        return HGParams.of(parse_fractions(args.alpha),
                           parse_fractions(args.beta))
    return None


def _resolve_fields(args, data: CyclotomicData | None,
                    default_auto: int) -> list[int]:
    if getattr(args, "field", None):
        return sorted(set(parse_ints(args.field)))
    bound = getattr(args, "auto", None) or default_auto
    if data is not None:
        return cat.admissible_fields(data, bound)
    return cat.prime_powers(bound)


def _selection_codes(selection: str, q: int) -> list[int]:
    if selection == "all":
        return list(range(1, q))
    return [int(v) % q for v in selection.split(",")]


def _describe(data) -> str:
    if isinstance(data, CyclotomicData):
        lam = landau_bound(data, "overQ")
        return f"{data.describe()} lambda={lam}"
    lam = landau_bound(data, "general")
    return f"{data.describe()} d={data.d} lambda_general={lam}"


def _emit(payload: bytes) -> None:
    sys.stdout.write(payload.decode())
    sys.stdout.flush()


def _render_cyclo(value: CycloNum) -> str:
    if value.is_rational():
        return str(value.reduce_to_rational())
    terms = [f"{c}*z{value.order}^{i}" for i, c in enumerate(value.canonical())
             if c]
    return "+".join(terms).replace("+-", "-")


# -- hq ------------------------------------------------------------------------

def _cmd_hq(args) -> int:
    config = RunConfig(command="hq", fmt=args.format, jobs=args.jobs,
                       cache_dir=_cache_dir(args), q_cap=args.q_cap,
                       selection=args.t, general=args.general,
                       timing=args.timing)
    params = _parse_params(args)
    if params is None:
        print("hq requires --p/--q, --alpha/--beta, or --params",
              file=sys.stderr)
        return 2
    if isinstance(params, HGParams) and not args.general:
        params = cyclotomic_from_params(params, None)  # may raise -> exit 2
    data = params if isinstance(params, CyclotomicData) else None
    hg_params = params if isinstance(params, HGParams) else params.params
    config.fields = _resolve_fields(args, data, default_auto=13)

    rows = []
    for q in config.fields:
        table = _get_field(q, config)
        for t in _selection_codes(config.selection, q):
            if args.general:
                value = h_general(table, hg_params, t)
                rows.append({"q": q, "t": t, "value": _render_cyclo(value),
                             "p_valuation": None,
                             "provenance": "GeneralDefinition"})
            else:
                hval = h_over_q(table, data, t)
                rows.append({"q": q, "t": t,
                             "value": render_number(hval.value),
                             "p_valuation": hval.p_valuation,
                             "provenance": hval.provenance.value})

    header = _describe(params)
    if config.fmt == "json":
        import json
        _emit((json.dumps({"params": header, "rows": rows}, indent=2)
               + "\n").encode())
    elif config.fmt == "csv":
        lines = ["q,t,value,p_valuation,provenance"]
        for row in rows:
            vp = "" if row["p_valuation"] is None else row["p_valuation"]
            lines.append(f"{row['q']},{row['t']},{row['value']},{vp},"
                         f"{row['provenance']}")
        _emit(("\n".join(lines) + "\n").encode())
    else:
        lines = [f"# {header}"]
        for row in rows:
            lines.append(f"q={row['q']} t={row['t']} H={row['value']} "
                         f"v_p={row['p_valuation']}")
        _emit(("\n".join(lines) + "\n").encode())
    return 0


# -- count ----------------------------------------------------------------------

def _cmd_count(args) -> int:
    config = RunConfig(command="count", fmt=args.format, jobs=args.jobs,
                       cache_dir=_cache_dir(args), q_cap=args.q_cap,
                       selection=args.lam, timing=args.timing)
    params = _parse_params(args)
    if not isinstance(params, CyclotomicData):
        print("count requires --p and --q exponent lists", file=sys.stderr)
        return 2
    config.fields = _resolve_fields(args, params, default_auto=13)
    from .variety import _component_brute, _torus_brute
    from .toric import enumerate_cells as cells_of

    reports = []
    for q in config.fields:
        table = _get_field(q, config)
        r, s = params.r, params.s
        cells = [c for c in cells_of(r, s)
                 if c.pairs and c.support_size <= r + s - 2]
        for lam in _selection_codes(config.selection, q):
            torus = _torus_brute(table, params, lam)
            total = torus + sum(_component_brute(table, params, c, lam)
                                for c in cells)
            reports.append(CountReport("torus(brute)", q, lam, torus,
                                       None, False))
            reports.append(CountReport("completed(brute)", q, lam, total,
                                       None, False))
    _emit(report_serialize(reports, config.fmt, include_timing=args.timing))
    return 0


# -- verify -----------------------------------------------------------------------

def _main_case(p_list, q_list, q: int, lam: int,
               cache_dir: str | None) -> CountReport:
    data = params_from_cyclotomic(p_list, q_list)
    table = build_field_cached(q, cache_dir) if cache_dir else build_field(q)
    try:
        return completed_count(table, data, lam)
    except SingularFiber as exc:
        report = exc.report
        report.label += " [singular fiber, skipped]"
        report.equal = True  # not a verification failure
        return report


def _pmap(fn, arglist, jobs: int) -> list:
    if jobs <= 1 or len(arglist) <= 1:
        return [fn(*a) for a in arglist]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, *a) for a in arglist]
        return [f.result() for f in futures]


def _suite_main(args, config: RunConfig) -> list[CountReport]:
    params = _parse_params(args)
    data_list = [params] if isinstance(params, CyclotomicData) else cat.catalog()
    cases = []
    for data in data_list:
        for q in (_resolve_fields(args, data, default_auto=13)):
            cases.extend((data.p_list, data.q_list, q, lam, config.cache_dir)
                         for lam in range(1, q))
    return _pmap(_main_case, cases, config.jobs)


def _suite_rewrite(args, config: RunConfig) -> list[CountReport]:
    params = _parse_params(args)
    data_list = [params] if isinstance(params, CyclotomicData) else cat.catalog()
    reports = []
    for data in data_list:
        den = data.params.n_den
        fields = [q for q in _resolve_fields(args, data, default_auto=31)
                  if (q - 1) % den == 0]
        for q in fields:
            table = _get_field(q, config)
            bad = 0
            for t in range(1, q):
                lhs = h_general(table, data.params, t).reduce_to_rational()
                if lhs != h_over_q(table, data, t).value:
                    bad += 1
            reports.append(CountReport.compare(
                f"rewrite {data.describe()}", q, None, bad, 0))
    return reports


def _suite_hd(args, config: RunConfig) -> list[CountReport]:
    fields = (parse_ints(args.field) if args.field else (7, 9, 13, 25, 27))
    reports = []
    for q in fields:
        table = table_for(_get_field(q, config))
        qq = q - 1
        for n in range(1, qq + 1):
            if qq % n:
                continue
            bad = sum(1 for m in range(qq)
                      if not hasse_davenport_defect(table, n, m).is_zero())
            reports.append(CountReport.compare(f"hasse-davenport N={n}",
                                               q, None, bad, 0))
    return reports


def _suite_stickelberger(args, config: RunConfig) -> list[CountReport]:
    fields = (parse_ints(args.field) if args.field else (8, 9, 25, 27, 49))
    reports = []
    for q in fields:
        table = _get_field(q, config)
        p, f = table.p, table.f
        bad = 0
        for r in range(q - 1):
            digits = 0
            rr = r
            while rr:
                digits += rr % p
                rr //= p
            if stickelberger_sigma(p, f, r) != digits:
                bad += 1
        reports.append(CountReport.compare("stickelberger", q, None, bad, 0))
    return reports


def _suite_ono(args, config: RunConfig) -> list[CountReport]:
    bound = args.auto or 27
    fields = (parse_ints(args.field) if args.field
              else [q for q in cat.prime_powers(bound) if q % 2])
    reports = []
    for q in fields:
        table = _get_field(q, config)
        for lam in range(2, q):
            reports.append(curve_counts(table, "legendre", lam))
    return reports


def _suite_denominator(args, config: RunConfig) -> list[CountReport]:
    params = _parse_params(args)
    data_list = [params] if isinstance(params, CyclotomicData) else cat.catalog()
    reports = []
    for data in data_list:
        bound = landau_bound(data, "overQ") - min(data.r, data.s)
        for q in _resolve_fields(args, data, default_auto=13):
            table = _get_field(q, config)
            bad = 0
            for t in range(1, q):
                vp = h_over_q(table, data, t).p_valuation
                if vp is not None and vp < bound:
                    bad += 1
            reports.append(CountReport.compare(
                f"denominator {data.describe()}", q, None, bad, 0))
    return reports


def _suite_cells(args, config: RunConfig) -> list[CountReport]:
    reports = []
    for r in range(1, 7):
        for s in range(1, 7):
            qs = {2, 3, 7, 13}
            qs.update(range(2, r + s + 2))  # at least deg+1 sample points
            for q in sorted(qs):
                for which in ("term", "main", "maximal"):
                    reports.append(cell_sum_identity(r, s, q, which))
    # coefficient check by base-1000 evaluation (all coefficients < 1000)
    reports.append(CountReport.compare("P_23 = q^2+3q+1", 1000, None,
                                       p_rs(2, 3, 1000), 1000**2 + 3000 + 1))
    return reports


def _suite_alt(args, config: RunConfig) -> list[CountReport]:
    fields = parse_ints(args.field) if args.field else (5, 9, 13)
    spec = cat.ono_alt_spec()
    reports = []
    for q in fields:
        table = _get_field(q, config)
        for lam in range(1, q):
            reports.append(alt_variety_count(table, spec, lam))
    return reports


def _cmd_verify(args) -> int:
    config = RunConfig(command="verify", fmt=args.format, jobs=args.jobs,
                       cache_dir=_cache_dir(args), q_cap=args.q_cap,
                       timing=args.timing)
    suite = {
        "main": _suite_main,
        "rewrite": _suite_rewrite,
        "hd": _suite_hd,
        "stickelberger": _suite_stickelberger,
        "ono": _suite_ono,
        "denominator": _suite_denominator,
        "cells": _suite_cells,
        "alt": _suite_alt,
    }[args.suite]
    reports = suite(args, config)
    failures = [r for r in reports if not r.equal]
    _emit(report_serialize(reports, config.fmt, include_timing=args.timing))
    if failures:
        sys.stderr.write(f"{len(failures)} verification failures:\n")
        sys.stderr.write(report_serialize(failures, "text").decode())
        return 1
    return 0


# -- table ------------------------------------------------------------------------

def _cmd_table(args) -> int:
    if args.what == "prs":
        if args.at is not None:
            print(p_rs(args.r, args.s, args.at))
        else:
            coeffs = p_rs(args.r, args.s)
            terms = []
            for k in range(len(coeffs) - 1, -1, -1):
                c = coeffs[k]
                if not c:
                    continue
                piece = "1" if (c == 1 and k == 0) else (
                    f"{c}" if k == 0 else
                    (f"q^{k}" if c == 1 else f"{c}*q^{k}"))
                terms.append(piece.replace("q^1", "q"))
            print(" + ".join(terms) if terms else "0")
        return 0
    if args.what == "cells":
        params = _parse_params(args)
        data = params if isinstance(params, CyclotomicData) else None
        if args.format == "json":
            import json
            rows = []
            for cell in enumerate_cells(args.r, args.s):
                row = {"pairs": cell.to_json(), "l": cell.length,
                       "support": cell.support_size,
                       "maximal": cell.is_maximal}
                if data is not None:
                    row["a_S"] = cell_gcd(data, cell)
                rows.append(row)
            print(json.dumps(rows, indent=2))
        else:
            for cell in enumerate_cells(args.r, args.s):
                extra = ""
                if data is not None:
                    extra = f" a_S={cell_gcd(data, cell)}"
                print(f"{cell.render()} l={cell.length} "
                      f"|S|={cell.support_size}"
                      f"{' maximal' if cell.is_maximal else ''}{extra}")
        return 0
    print(f"unknown table {args.what!r}", file=sys.stderr)
    return 2


# -- cache ------------------------------------------------------------------------

def _default_cache_dir(args) -> str:
    return (_cache_dir(args)
            or os.path.join(os.path.expanduser("~"), ".cache", "hqcount"))


def _cmd_cache(args) -> int:
    directory = _default_cache_dir(args)
    if args.action == "build":
        if not args.field:
            print("cache build requires --field", file=sys.stderr)
            return 2
        for q in parse_ints(args.field):
            table = build_field(q, max_q=args.q_cap)
            path = save_field(table, directory)
            print(f"wrote {path}")
        return 0
    if args.action == "clear":
        removed = 0
        if os.path.isdir(directory):
            for name in sorted(os.listdir(directory)):
                if name.startswith("hqft-") and name.endswith(".tbl"):
                    os.remove(os.path.join(directory, name))
                    removed += 1
        print(f"removed {removed} cached tables from {directory}")
        return 0
    print(f"unknown cache action {args.action!r}", file=sys.stderr)
    return 2


# -- argument plumbing --------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"),
                        default="text")
    common.add_argument("--field", help="comma-separated prime powers")
    common.add_argument("--auto", type=int,
                        help="use all admissible prime powers <= N")
    common.add_argument("--cache-dir", dest="cache_dir")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--q-cap", dest="q_cap", type=int,
                        default=DEFAULT_MAX_Q)
    common.add_argument("--timing", action="store_true",
                        help="include wall-clock timings in reports")
    pspec = argparse.ArgumentParser(add_help=False)
    pspec.add_argument("--p", help="comma-separated p exponents")
    pspec.add_argument("--q", help="comma-separated q exponents")
    pspec.add_argument("--alpha", help="comma-separated fractions")
    pspec.add_argument("--beta", help="comma-separated fractions")
    pspec.add_argument("--params", help='e.g. "p=3 q=1,1,1"')

    parser = argparse.ArgumentParser(
        prog="hqcount",
        description="Exact finite hypergeometric sums and point-count "
                    "verification over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_hq = sub.add_parser("hq", parents=[common, pspec],
                          help="tabulate H_q values")
    p_hq.add_argument("--t", default="all")
    p_hq.add_argument("--general", action="store_true",
                      help="use the general definition instead of over-Q")
    p_hq.set_defaults(func=_cmd_hq)

    p_count = sub.add_parser("count", parents=[common, pspec],
                             help="brute-force counts only")
    p_count.add_argument("--lam", default="all")
    p_count.set_defaults(func=_cmd_count)

    p_verify = sub.add_parser("verify", parents=[common, pspec],
                              help="run a named verification suite")
    p_verify.add_argument("suite", choices=VERIFY_SUITES)
    p_verify.set_defaults(func=_cmd_verify)

    p_table = sub.add_parser("table", parents=[common, pspec],
                             help="P_rs polynomials and cell listings")
    p_table.add_argument("what", choices=("prs", "cells"))
    p_table.add_argument("--r", type=int, required=True)
    p_table.add_argument("--s", type=int, required=True)
    p_table.add_argument("--at", type=int, help="evaluate P_rs at q")
    p_table.set_defaults(func=_cmd_table)

    p_cache = sub.add_parser("cache", parents=[common],
                             help="build or clear field-table caches")
    p_cache.add_argument("action", choices=("build", "clear"))
    p_cache.add_argument("--dir", dest="cache_dir2")
    p_cache.set_defaults(func=_cmd_cache)
    return parser


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if getattr(args, "cache_dir2", None):
        args.cache_dir = args.cache_dir2
    try:
        return args.func(args)
    except HqcountError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
