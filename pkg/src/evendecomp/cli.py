"""Command-line front end.

Structured results go to stdout (or --out) as JSON or CSV; prose goes to
stderr.  Exit codes: 0 success, 1 negative verdict or unmet condition,
2 usage or input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .graph import Graph, GraphParseError, Pattern, find_disjoint_induced, parse_edge_list, parse_graph6
from .witness import ResourceCapError

log = logging.getLogger("evendecomp")

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
MC_NAMES = ("c", "nondecomposable", "bstar", "removal", "parity", "forget")


class UsageError(Exception):
    pass


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("expected an unsigned 64-bit integer")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def _graph_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--g6", help="graph in graph6 format")
    src.add_argument("--edges", metavar="FILE", help="edge-list file: n on the first line, then 'u v' lines")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--workers", type=_nonneg, default=None, help="worker processes (default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evendecomp", description="Even-decomposability and even-degeneracy tools.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="exact verdicts for one graph")
    _graph_args(p)
    _common(p)
    p.add_argument("--exact-cap", type=_nonneg, default=18, help="largest n for the exact decomposability DP")

    p = sub.add_parser("decompose", help="constructive decomposition with a witness")
    _graph_args(p)
    _common(p)
    p.add_argument("--regime", choices=("auto", "uniform", "dense", "sparse"), default="auto")
    p.add_argument("--tau1", type=_nonneg, help="packing size (P3 copies, or F copies for uniform)")
    p.add_argument("--tau2", type=_nonneg, help="forbidden clique size")
    p.add_argument("--tau3", type=_nonneg, help="degree cap (complement degree for dense)")
    p.add_argument("--exact-cap", type=_nonneg, default=18)
    p.add_argument("--seed", type=_u64, default=0, help="seed for the F-gadget search")

    p = sub.add_parser("degenerate", help="even-degenerate ordering search")
    _graph_args(p)
    _common(p)

    p = sub.add_parser("census", help="exhaustive census of labeled graphs")
    _common(p)
    p.add_argument("-n", type=_nonneg, required=True)
    p.add_argument("--decomposability", action="store_true")
    p.add_argument("--degeneracy", action="store_true")
    p.add_argument("--exemplars", type=_nonneg, default=0, help="keep the first K graphs of each failure class")

    p = sub.add_parser("mc", help="Monte-Carlo experiments")
    _common(p)
    p.add_argument("name", choices=MC_NAMES)
    p.add_argument("-n", type=_nonneg, required=True)
    p.add_argument("-p", type=float, default=0.5)
    p.add_argument("-t", type=_nonneg)
    p.add_argument("-a", type=_nonneg)
    p.add_argument("-s", type=_nonneg, help="shared set size for bstar (default n-1)")
    p.add_argument("--target", type=_nonneg, default=0, help="parity vector for forget")
    p.add_argument("--drop", type=_nonneg, default=None, help="vertex removed for forget (default n-1)")
    p.add_argument("--samples", type=_nonneg, default=100_000)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--exact-cap", type=_nonneg, default=18)
    p.add_argument("--no-timing", action="store_true", help="record runtime_s as 0 for byte-stable output")

    p = sub.add_parser("verify-lemmas", help="run the parity-rig suites for the absorption lemmas")
    _common(p)
    p.add_argument("--f-seeds", type=_nonneg, default=20)
    return parser


# ---------------------------------------------------------------- helpers


def _load_graph(args) -> Graph:
    if args.g6 is not None:
        return parse_graph6(args.g6)
    try:
        text = Path(args.edges).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.edges}: {exc}") from exc
    return parse_edge_list(text)


def _config(args) -> dict:
    from ._parallel import default_workers

    cfg = {k: v for k, v in vars(args).items() if k not in ("verbose",)}
    if "workers" in cfg and cfg["workers"] is None:
        cfg["workers"] = default_workers()
    cfg["version"] = __version__
    return cfg


def _emit(args, payload: dict, rows: list[dict] | None = None) -> None:
    """JSON: one object with the config; CSV: a '#' config line, then rows."""
    if args.format == "json":
        text = json.dumps({"config": _config(args), **payload}, sort_keys=True) + "\n"
    else:
        rows = rows if rows is not None else [_flatten(payload)]
        buf = io.StringIO()
        buf.write("# config: " + json.dumps(_config(args), sort_keys=True) + "\n")
        if rows:
            fields = list(rows[0])
            w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
            w.writeheader()
            w.writerows(rows)
        text = buf.getvalue()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _flatten(d: dict) -> dict:
    return {k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in d.items()}


# ---------------------------------------------------------------- subcommands


def cmd_decide(args) -> int:
    from .degeneracy import exact_even_degenerate
    from .oracle import exact_even_decomposable

    g = _load_graph(args)
    t0 = time.perf_counter()
    ok, w = exact_even_decomposable(g, cap=args.exact_cap)
    deg, order = exact_even_degenerate(g)
    elapsed = time.perf_counter() - t0
    payload = {
        "graph6": g.to_graph6(),
        "n": g.n,
        "edges": g.num_edges(),
        "decomposability": "even-decomposable" if ok else "non-even-decomposable",
        "witness": w.step_lists() if ok else None,
        "degeneracy": "even-degenerate" if deg else "non-even-degenerate",
        "ordering": list(order.perm) if deg else None,
    }
    if g.num_edges() % 2:
        payload["note"] = "odd edge count"
    log.info("decided in %.3f ms", elapsed * 1e3)
    _emit(args, payload)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_decompose(args) -> int:
    from .decompose import Thresholds, decompose_auto, decompose_dense, decompose_sparse, decompose_uniform
    from .graph import clique_number

    g = _load_graph(args)
    n = g.n
    if args.regime == "auto":
        out = decompose_auto(g, exact_cap=args.exact_cap)
    elif args.regime == "uniform":
        t = args.tau1 if args.tau1 is not None else clique_number(g)
        packing = find_disjoint_induced(g, Pattern.F, t, seed=args.seed)
        out = decompose_uniform(g, packing, t)
    else:
        base = Thresholds.fractions(n)
        cfg = Thresholds(
            base.packing if args.tau1 is None else args.tau1,
            base.clique_cap if args.tau2 is None else args.tau2,
            base.degree_cap if args.tau3 is None else args.tau3,
        )
        out = (decompose_dense if args.regime == "dense" else decompose_sparse)(g, cfg)
    payload = {"graph6": g.to_graph6(), "n": n, **out.to_dict()}
    _emit(args, payload)
    return EXIT_OK if out.decomposed else EXIT_NEGATIVE


def cmd_degenerate(args) -> int:
    from .degeneracy import DEGEN_CAP, Ordering, exact_even_degenerate, greedy_ordering

    g = _load_graph(args)
    res = greedy_ordering(g)
    payload = {"graph6": g.to_graph6(), "n": g.n}
    if isinstance(res, Ordering):
        payload.update(greedy="ordering", ordering=list(res.perm), exact=True)
        _emit(args, payload)
        return EXIT_OK
    payload.update(greedy="stuck", stuck=res.vertices())
    if g.n > DEGEN_CAP:
        payload["exact"] = None
        _emit(args, payload)
        return EXIT_CAP
    ok, order = exact_even_degenerate(g)
    payload["exact"] = ok
    payload["ordering"] = list(order.perm) if ok else None
    _emit(args, payload)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_census(args) -> int:
    from .oracle import census

    decomp, degen = args.decomposability, args.degeneracy
    if not decomp and not degen:
        decomp = degen = True
    report = census(args.n, decomposability=decomp, degeneracy=degen, exemplars=args.exemplars, workers=args.workers)
    _emit(args, {"report": report.to_dict()}, rows=report.csv_rows())
    return EXIT_OK


def run_mc(args):
    from . import experiments as ex

    timing = not args.no_timing
    n = args.n
    if args.name == "c":
        return ex.estimate_c(n, args.samples, args.seed, args.workers, timing=timing)
    if args.name == "bstar":
        return ex.estimate_b_star(n, args.samples, args.seed, s=args.s, workers=args.workers, timing=timing)
    if args.name == "removal":
        if args.t is None or args.a is None:
            raise UsageError("removal needs -t and -a")
        return ex.removal_process_stats(n, args.t, args.a, args.samples, args.seed, args.workers, timing=timing)
    if args.name == "nondecomposable":
        return ex.estimate_nondecomposable(
            n, args.p, args.samples, args.seed, args.workers, exact_cap=args.exact_cap, timing=timing
        )
    t0 = time.perf_counter()
    if args.name == "parity":
        res = ex.degree_parity_uniformity(n, args.samples, args.seed, args.workers)
    else:
        drop = n - 1 if args.drop is None else args.drop
        res = ex.forgetfulness(n, args.target, drop, args.samples, args.seed, args.workers)
    return res.to_record(time.perf_counter() - t0 if timing else 0.0)


def cmd_mc(args) -> int:
    from .experiments import records_to_text, write_results

    try:
        record = run_mc(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    log.info("%s: estimate %.6g +/- %.2g", record.experiment, record.estimate, record.stderr)
    if args.out:
        write_results([record], args.out, args.format)
        return EXIT_OK
    if args.format == "json":
        sys.stdout.write(json.dumps({"config": _config(args), "record": record.to_dict()}, sort_keys=True) + "\n")
    else:
        sys.stdout.write("# config: " + json.dumps(_config(args), sort_keys=True) + "\n")
        sys.stdout.write(records_to_text([record], "csv"))
    return EXIT_OK


def cmd_verify_lemmas(args) -> int:
    from .rigs import verify_lemmas

    results = verify_lemmas(f_seeds=args.f_seeds)
    failed = [r for r in results if not r.ok]
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'} {r.name}" + (f": {r.detail}" if r.detail else ""), file=sys.stderr)
    print(f"{len(results) - len(failed)}/{len(results)} cases passed", file=sys.stderr)
    rows = [{"case": r.name, "result": "PASS" if r.ok else "FAIL", "detail": r.detail} for r in results]
    _emit(args, {"passed": len(results) - len(failed), "failed": len(failed), "cases": rows}, rows=rows)
    return EXIT_OK if not failed else EXIT_NEGATIVE


COMMANDS = {
    "decide": cmd_decide,
    "decompose": cmd_decompose,
    "degenerate": cmd_degenerate,
    "census": cmd_census,
    "mc": cmd_mc,
    "verify-lemmas": cmd_verify_lemmas,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except ResourceCapError as exc:
        print(f"evendecomp: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, GraphParseError) as exc:
        print(f"evendecomp: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
