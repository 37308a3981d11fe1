"""Command-line surface.

Every library operation is reachable through exactly one subcommand (see
OP_COMMANDS).  Exact values are always serialized as "p/q" strings or
symbolic-term lists; `--approx` adds decimal renderings next to them, never
instead of them.  Exit codes: 0 success, 1 argument error, 2 consistency
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import asympt, lens, polylog, ribbon, verify
from .bernoulli import bernoulli, modified_bernoulli
from .cache import ENV_CACHE_DIR, SequenceCache, default_cache
from .errors import ConsistencyError
from .numeric import DEFAULT_PRECISION, const_eval, format_float
from .scalars import ConstElem, format_rational
from .series import TruncSeries

#: operation -> the one subcommand that surfaces it
OP_COMMANDS = {
    # numeric-core
    "bernoulli": "bernoulli",
    "modified_bernoulli": "bernoulli",
    "series_op": "f-series",
    "const_eval": "map-constants",
    # polylog
    "polylog_rational": "polylog",
    "polylog_exp_expansion": "polylog",
    "f_series": "f-series",
    "f_aux_series": "f-aux",
    "f_aux_closed": "f-aux",
    # lens
    "dedekind_sum": "lens-table",
    "casson_lens": "lens-table",
    "free_energy_genus": "lens-fe",
    "free_energy_table": "lens-table",
    "sln_specialization_residual": "sln-check",
    "gevrey_estimate": "gevrey",
    # ribbon
    "classify_marking": "weight",
    "weight_glN": "weight",
    "enumerate_trivalent": "enumerate",
    "lemma_bounds_report": "lemma-bounds",
    "count_rooted_maps": "count-maps",
    # asympt
    "a_seq": "a-seq",
    "map_constants": "map-constants",
    "mu_seq": "mu-seq",
    "painleve_residual": "painleve-check",
    "transseries_residual": "transseries-check",
    "richardson": "richardson",
    "estimate_stokes": "stokes",
    "tg_asymptotic_check": "tg-check",
    # cli
    "run": "verify",
    "cache": "cache",
}


def _float_json(x, precision: int) -> dict:
    return {"value": format_float(x, precision), "precision_bits": precision}


def _series_json(series: TruncSeries, args) -> dict:
    data = series.to_json()
    data["schema"] = "csfree/series/1"
    if args.approx:
        for term in data["terms"]:
            coeff = term["coeff"]
            value = (ConstElem.from_json(coeff) if isinstance(coeff, list)
                     else Fraction(coeff))
            term["approx"] = format_float(const_eval(value, args.precision),
                                          args.precision)
    return data


def _const_json(value: ConstElem, args) -> object:
    data = value.to_json()
    if args.approx:
        return {"terms": data,
                "approx": format_float(const_eval(value, args.precision),
                                       args.precision)}
    return data


def _emit(payload, args) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    elif args.format == "csv":
        raise ValueError("csv output is only available for lens-table")
    else:
        sys.stdout.write(_as_text(payload) + "\n")


def _as_text(payload, indent=0) -> str:
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for k, v in payload.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_as_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(_as_text(v, indent) if isinstance(v, (dict, list))
                         else f"{pad}- {v}" for v in payload)
    return f"{pad}{payload}"


def _cache_for(args) -> SequenceCache | None:
    if getattr(args, "cache_dir", None):
        return SequenceCache(args.cache_dir)
    return default_cache()


def _cached_sequence(args, name: str, length: int, compute):
    """Fetch at least `length` values of a named sequence through the cache."""
    cache = _cache_for(args)
    if cache is not None:
        stored = cache.read(name)
        if stored is not None and len(stored) >= length:
            return stored[:length]
    values = compute()
    if cache is not None:
        cache.write(name, values)
    return values


# -- command handlers ---------------------------------------------------------


def cmd_bernoulli(args):
    if args.modified:
        value = modified_bernoulli(args.n)
    else:
        value = bernoulli(args.n)
    payload = {"schema": "csfree/value/1",
               "op": "modified-bernoulli" if args.modified else "bernoulli",
               "n": args.n, "value": format_rational(value)}
    if args.approx:
        payload["approx"] = format_float(const_eval(value, args.precision),
                                         args.precision)
    _emit(payload, args)
    return 0


def cmd_f_series(args):
    series = polylog.f_series(args.order, route=args.route)
    _emit(_series_json(series, args), args)
    return 0


def cmd_f_aux(args):
    if args.closed:
        series = polylog.f_aux_closed(args.g, args.order)
    else:
        series = polylog.f_aux_series(args.g, args.order)
    _emit(_series_json(series, args), args)
    return 0


def cmd_polylog(args):
    if args.exp:
        series = polylog.polylog_exp_expansion(args.alpha, args.order)
        _emit(_series_json(series, args), args)
    else:
        rep = polylog.polylog_rational(args.alpha)
        _emit({"schema": "csfree/polylog/1", "alpha": args.alpha,
               "numerator": list(rep.numerator), "pole_order": rep.pole_order},
              args)
    return 0


def cmd_lens_fe(args):
    space = lens.LensSpace(args.d, args.b)
    series = lens.free_energy_genus(space, args.g, args.order,
                                    convention=args.lambda_convention,
                                    route=args.route)
    payload = _series_json(series, args)
    payload.update({"d": args.d, "b": args.b, "g": args.g,
                    "lambda_convention": args.lambda_convention})
    _emit(payload, args)
    return 0


def cmd_lens_table(args):
    space = lens.LensSpace(args.d, args.b)
    table = lens.free_energy_table(space, args.g_max, args.d_max,
                                   convention=args.lambda_convention)
    if args.format == "csv":
        sys.stdout.write(table.to_csv())
    else:
        _emit(table.to_json(), args)
    return 0


def cmd_sln_check(args):
    space = lens.LensSpace(args.d, args.b)
    res = lens.sln_specialization_residual(space, args.rank, args.order,
                                           convention=args.lambda_convention)
    payload = _series_json(res, args)
    payload["zero"] = res.is_zero()
    _emit(payload, args)
    return 0 if res.is_zero() else 2


def cmd_gevrey(args):
    space = lens.LensSpace(args.d, args.b)
    report = lens.gevrey_estimate(space, args.g_max, args.d_max,
                                  convention=args.lambda_convention,
                                  precision=args.precision)
    _emit({
        "schema": "csfree/gevrey/1",
        "d": args.d, "b": args.b,
        "g_max": args.g_max, "d_max": args.d_max,
        "c_min": _float_json(report.c_min, args.precision),
        "attained_at": {"g": report.attained_at[0], "d": report.attained_at[1]},
        "prefix_c": [{"g_max": g, "c": format_float(c, args.precision)}
                     for g, c in report.prefix_c],
        "non_increasing_beyond_g3": report.non_increasing_beyond_3,
    }, args)
    return 0


def cmd_weight(args):
    graph = ribbon.parse_graph(Path(args.graph).read_text())
    if args.marking is not None:
        marking = [int(ch) for ch in args.marking]
        surf = ribbon.classify_marking(graph, marking)
        _emit({"schema": "csfree/surface/1", "marking": args.marking,
               "genus": surf.genus, "boundary": surf.boundary}, args)
        return 0
    w = ribbon.weight_gln(graph)
    _emit({"schema": "csfree/weight/1", "poly": w.poly_str(),
           "coeffs": list(w.coeffs), "hbar_exp": w.hbar_exp}, args)
    return 0


def cmd_enumerate(args):
    graphs = ribbon.enumerate_trivalent(args.n_max)
    counts: dict[int, int] = {}
    for g in graphs:
        counts[g.degree] = counts.get(g.degree, 0) + 1
    payload = {"schema": "csfree/enumeration/1", "n_max": args.n_max,
               "counts_per_degree": {str(k): v for k, v in sorted(counts.items())}}
    if args.emit_graphs:
        payload["graphs"] = [ribbon.format_graph(g) for g in graphs]
    _emit(payload, args)
    return 0


def cmd_lemma_bounds(args):
    report = ribbon.weight_bounds_report(args.n_max)
    _emit({
        "schema": "csfree/bounds/1",
        "n_max": report.n_max,
        "counts_per_degree": {str(k): v for k, v in sorted(report.counts_per_degree.items())},
        "degree_bound_violations": report.degree_violations,
        "sharp_l1_exceedances": [
            {"index": i, "degree": report.rows[i].degree,
             "l1": report.rows[i].l1_norm, "sharp_bound": 2 ** report.rows[i].degree}
            for i in report.sharp_l1_exceedances],
        "corollary_counts": {
            str(n): entry for n, entry in sorted(report.corollary_counts.items())},
    }, args)
    return 0 if not report.degree_violations else 2


def cmd_count_maps(args):
    value = ribbon.count_rooted_maps(args.genus, args.edges)
    _emit({"schema": "csfree/value/1", "op": "count-maps",
           "genus": args.genus, "edges": args.edges, "value": value,
           "table": {str(g): c for g, c in ribbon.rooted_map_table(args.edges).items()}},
          args)
    return 0


def cmd_a_seq(args):
    values = _cached_sequence(args, "a_seq", args.g_max + 1,
                              lambda: asympt.a_seq(args.g_max))
    _emit({"schema": "csfree/sequence/1", "name": "a_seq",
           "values": [format_rational(v) for v in values]}, args)
    return 0


def cmd_map_constants(args):
    m = args.g_max + 1
    memo = {}

    def consts():
        if "c" not in memo:
            memo["c"] = asympt.map_constants(args.g_max)
        return memo["c"]

    f_list = _cached_sequence(args, "map_f", m, lambda: consts().f)
    t_list = _cached_sequence(args, "map_t", m, lambda: consts().t)
    u_list = _cached_sequence(args, "map_u", m, lambda: consts().u)
    _emit({
        "schema": "csfree/map-constants/1",
        "g_max": args.g_max,
        "f": [_const_json(v, args) for v in f_list],
        "t": [_const_json(v, args) for v in t_list],
        "u": [None] + [format_rational(v) for v in u_list[1:]],
    }, args)
    return 0


def cmd_mu_seq(args):
    values = _cached_sequence(args, "mu_seq", args.l_max + 1,
                              lambda: asympt.mu_seq(args.l_max))
    _emit({"schema": "csfree/sequence/1", "name": "mu_seq",
           "values": [_const_json(v, args) for v in values]}, args)
    return 0


def cmd_painleve_check(args):
    try:
        asympt.painleve_residual(args.g_max)
    except ConsistencyError as exc:
        _emit({"schema": "csfree/check/1", "ok": False, "detail": str(exc)}, args)
        return 2
    _emit({"schema": "csfree/check/1", "ok": True,
           "g_max": args.g_max, "horizon_order": 20 * args.g_max + 12}, args)
    return 0


def cmd_transseries_check(args):
    try:
        asympt.transseries_residual(args.g_max, args.l_max)
        _, solved, _ = asympt.transseries_leading_balance()
    except ConsistencyError as exc:
        _emit({"schema": "csfree/check/1", "ok": False, "detail": str(exc)}, args)
        return 2
    _emit({"schema": "csfree/check/1", "ok": True,
           "g_max": args.g_max, "l_max": args.l_max,
           "exponent_constant_squared": format_rational(solved)}, args)
    return 0


def cmd_richardson(args):
    est = asympt.k_estimate(args.g_max, args.depth, args.precision)
    _emit({
        "schema": "csfree/limit/1",
        "target": "map-count limit",
        "g_max": args.g_max, "depth": args.depth,
        "estimate": _float_json(est.value, args.precision),
        "stability": format_float(est.stability, args.precision),
        "reference": _float_json(est.reference, args.precision),
        "matched_digits": round(est.matched_digits, 2),
    }, args)
    return 0


def cmd_stokes(args):
    est = asympt.estimate_stokes(args.g_max, args.l_corrections, args.depth,
                                 args.precision)
    _emit({
        "schema": "csfree/limit/1",
        "target": "stokes parameter",
        "g_max": args.g_max, "l_corrections": args.l_corrections,
        "depth": args.depth,
        "estimate": _float_json(est.value, args.precision),
        "stability": format_float(est.stability, args.precision),
        "reference": _float_json(est.reference, args.precision),
        "matched_digits": round(est.matched_digits, 2),
    }, args)
    return 0


def cmd_tg_check(args):
    ratios = asympt.tg_asymptotic_check(args.g_max, args.precision)
    acc, _ = asympt.richardson(ratios[19:], args.depth, start_index=20,
                               precision=args.precision)
    _emit({
        "schema": "csfree/tg-check/1",
        "g_max": args.g_max,
        "ratios": [{"g": g + 1, "ratio": format_float(r, args.precision)}
                   for g, r in enumerate(ratios) if (g + 1) % 10 == 0],
        "ratio_at_g_max": format_float(ratios[-1], args.precision),
        "accelerated": format_float(acc, args.precision),
    }, args)
    return 0


def cmd_verify(args):
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    results = verify.run_suites(names, precision=args.precision)
    width = max(len(r.name) for r in results) + 2
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"[{status}] {r.suite:<12} {r.name:<{width}}"
        if r.detail:
            line += f" {r.detail}"
        sys.stdout.write(line.rstrip() + "\n")
        failed += 0 if r.passed else 1
    sys.stdout.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return 0 if not failed else 2


def cmd_cache(args):
    cache = _cache_for(args)
    if cache is None:
        raise ValueError(f"no cache directory; pass --cache-dir or set {ENV_CACHE_DIR}")
    if args.op == "read":
        values = cache.read(args.key)
        if values is None:
            _emit({"schema": "csfree/cache/1", "key": args.key, "hit": False}, args)
        else:
            _emit({"schema": "csfree/cache/1", "key": args.key, "hit": True,
                   "length": len(values)}, args)
        return 0
    if args.op == "write":
        if args.key == "a_seq":
            values = asympt.a_seq(args.g_max)
        elif args.key == "mu_seq":
            values = asympt.mu_seq(args.g_max)
        else:
            raise ValueError("cache write supports keys a_seq and mu_seq")
        ok = cache.write(args.key, values)
        _emit({"schema": "csfree/cache/1", "key": args.key, "written": ok,
               "length": len(values)}, args)
        return 0
    removed = cache.clear(None if args.key == "all" else args.key)
    _emit({"schema": "csfree/cache/1", "cleared": removed}, args)
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csfree",
        description="Exact lens-space free energy, ribbon-graph weights, "
                    "and rooted-map asymptotics.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                        help="binary precision for numeric output")
    common.add_argument("--approx", action="store_true",
                        help="add decimal renderings next to exact values")
    common.add_argument("--cache-dir", default=None,
                        help=f"sequence cache directory (or ${ENV_CACHE_DIR})")
    common.add_argument("--lambda-convention", choices=sorted(lens.LAMBDA_CONVENTIONS),
                        default=lens.DEFAULT_LAMBDA_CONVENTION,
                        help="Casson-invariant normalization")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        p.set_defaults(handler=handler)
        return p

    p = add("bernoulli", cmd_bernoulli, help="Bernoulli numbers, exact")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--modified", action="store_true",
                   help="B_n/(n*n!) for even positive n")

    p = add("f-series", cmd_f_series, help="log-sinh series")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--route", choices=("coeff", "log"), default="coeff")

    p = add("f-aux", cmd_f_aux, help="genus-indexed auxiliary series")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--closed", action="store_true", help="polylog closed-form route")

    p = add("polylog", cmd_polylog, help="negative-order polylogarithms")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--exp", action="store_true",
                   help="Laurent expansion of Li_alpha(e^t) instead")
    p.add_argument("--order", type=int, default=12)

    p = add("lens-fe", cmd_lens_fe, help="genus-g free energy of L(d,b)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--route", choices=("series", "closed"), default="series")

    p = add("lens-table", cmd_lens_table, help="free-energy coefficient table")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--g-max", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)

    p = add("sln-check", cmd_sln_check, help="fixed-rank specialization residual")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--N", dest="rank", type=int, required=True)
    p.add_argument("--order", type=int, default=10)

    p = add("gevrey", cmd_gevrey, help="empirical growth-constant estimate")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--g-max", type=int, default=10)
    p.add_argument("--d-max", type=int, default=10)

    p = add("weight", cmd_weight, help="weight-system polynomial of a graph")
    p.add_argument("--graph", required=True, help="ribbon-graph file (v:/e: format)")
    p.add_argument("--marking", default=None,
                   help="0/1 string: classify this thickening instead")

    p = add("enumerate", cmd_enumerate, help="connected trivalent ribbon graphs")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--emit-graphs", action="store_true")

    p = add("lemma-bounds", cmd_lemma_bounds, help="weight degree/norm bounds")
    p.add_argument("--n-max", type=int, default=3)

    p = add("count-maps", cmd_count_maps, help="rooted maps by genus")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)

    p = add("a-seq", cmd_a_seq, help="formal-solution coefficients")
    p.add_argument("--g-max", type=int, required=True)

    p = add("map-constants", cmd_map_constants, help="f_g, t_g, u_g exactly")
    p.add_argument("--g-max", type=int, required=True)

    p = add("mu-seq", cmd_mu_seq, help="trans-series correction coefficients")
    p.add_argument("--l-max", type=int, required=True)

    p = add("painleve-check", cmd_painleve_check, help="formal-solution residual")
    p.add_argument("--g-max", type=int, default=20)

    p = add("transseries-check", cmd_transseries_check,
            help="linearized trans-series residual")
    p.add_argument("--g-max", type=int, default=12)
    p.add_argument("--l-max", type=int, default=8)

    p = add("richardson", cmd_richardson, help="accelerated map-count limit")
    p.add_argument("--g-max", type=int, default=120)
    p.add_argument("--depth", type=int, default=8)

    p = add("stokes", cmd_stokes, help="large-order Stokes-parameter recovery")
    p.add_argument("--g-max", type=int, default=60)
    p.add_argument("--l-corrections", type=int, default=4)
    p.add_argument("--depth", type=int, default=6)

    p = add("tg-check", cmd_tg_check, help="growth-constant ratio test")
    p.add_argument("--g-max", type=int, default=60)
    p.add_argument("--depth", type=int, default=2)

    p = add("verify", cmd_verify, help="run verification suites")
    p.add_argument("--suite", default="all",
                   choices=["all"] + sorted(verify.SUITES))

    p = add("cache", cmd_cache, help="sequence cache maintenance")
    p.add_argument("--op", choices=("read", "write", "clear"), required=True)
    p.add_argument("--key", required=True, help="sequence name, or 'all' for clear")
    p.add_argument("--g-max", type=int, default=50)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.handler(args)
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
