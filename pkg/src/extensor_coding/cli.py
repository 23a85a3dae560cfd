"""Command-line front end.

Each run prints one JSON object on stdout and a one-line summary on stderr.
Exit codes: 0 found / estimate produced, 1 not found, 2 error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from fractions import Fraction
from typing import List, Optional

from .circuit import CircuitError, detect_multilinear_report, parse_circuit
from .extensor import DimensionCapError
from .graph import GraphFormatError, parse_graph
from .paths import (
    approx_count_paths,
    detect_deterministic,
    detect_few_paths,
    detect_random_edge_weights,
    detect_representative,
    detect_unambiguous,
)
from .subgraphs import TDError, approx_count_subgraphs, parse_td

SEED_ENV = "EXTENSOR_SEED"

DETECT_HELP = """detector:
  unambiguous     walk-sum at the Vandermonde coding; correct only if G has at most one k-path
  deterministic   lifted Vandermonde coding; always correct
  random-edge     random integer edge weights; no false positives, rare false negatives
  representative  representative path families; always correct
  few:C           edge-variable zero test; correct if G has at most C k-paths"""


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _read(path: str):
    with open(path, "rb") as fh:
        data = fh.read()
    return data.decode("utf-8"), hashlib.sha256(data).hexdigest()


def _num(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator, "float": float(x)}
    return x


def _emit(report: dict, summary: str) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    sys.stdout.flush()
    sys.stderr.write(summary + "\n")


def _trial_stats(raw, k: int) -> dict:
    vals = [int(x) for x in raw]
    if not vals:
        return {}
    f = math.factorial(k)
    mean = Fraction(sum(vals), len(vals) * f)
    var = Fraction(sum(v * v for v in vals), len(vals) * f * f) - mean * mean
    return {"count": len(vals), "min": min(vals), "max": max(vals),
            "mean_over_kfact": float(mean), "var_over_kfact2": float(var)}


def cmd_detect(args) -> int:
    text, digest = _read(args.graph)
    G = parse_graph(text)
    mode = args.mode
    params = {"k": args.k, "mode": mode, "seed": args.seed}
    if mode == "unambiguous":
        found = detect_unambiguous(G, args.k)
    elif mode == "deterministic":
        found = detect_deterministic(G, args.k)
    elif mode == "random-edge":
        found = detect_random_edge_weights(G, args.k, seed=args.seed)
    elif mode == "representative":
        found = detect_representative(G, args.k)
    elif mode.startswith("few:"):
        C = int(mode[4:])
        if C < 1:
            raise ValueError("few:C needs C >= 1")
        params["C"] = C
        found = detect_few_paths(G, args.k, C)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return _finish(args, "detect", digest, params, {"found": bool(found)},
                   f"detect[{mode}] k={args.k}: {'found' if found else 'not found'}", 0 if found else 1)


def cmd_count_paths(args) -> int:
    text, digest = _read(args.graph)
    G = parse_graph(text)
    est = approx_count_paths(G, args.k, args.eps, seed=args.seed, trials=args.trials, dist=args.dist,
                             jobs=args.jobs)
    params = {"k": args.k, "eps": str(args.eps), "t": est.trials, "seed": args.seed, "dist": args.dist}
    result = {"estimate": _num(est.estimate)}
    return _finish(args, "count-paths", digest, params, result,
                   f"count-paths k={args.k} t={est.trials}: estimate {float(est.estimate):.4f}", 0,
                   stats=_trial_stats(est.raw, args.k))


def cmd_count_sub(args) -> int:
    ptext, pdig = _read(args.pattern)
    htext, hdig = _read(args.host)
    H, G = parse_graph(ptext), parse_graph(htext)
    td = None
    if args.td:
        ttext, _ = _read(args.td)
        td, k = parse_td(ttext)
        if k != H.n:
            raise TDError(f"decomposition is for {k} vertices, pattern has {H.n}")
    est = approx_count_subgraphs(H, G, args.eps, seed=args.seed, trials=args.trials, td=td,
                                 dist=args.dist, jobs=args.jobs)
    params = {"k": H.n, "eps": str(args.eps), "t": est.trials, "seed": args.seed, "dist": args.dist}
    result = {"estimate": _num(est.estimate), "aut": est.extra["aut"], "width": est.extra["width"]}
    digest = hashlib.sha256((pdig + hdig).encode()).hexdigest()
    return _finish(args, "count-sub", digest, params, result,
                   f"count-sub k={H.n} t={est.trials}: estimate {float(est.estimate):.4f} "
                   f"(|Aut|={est.extra['aut']}, width {est.extra['width']})", 0,
                   stats=_trial_stats(est.raw, H.n))


def cmd_detect_multilinear(args) -> int:
    text, digest = _read(args.circuit)
    c = parse_circuit(text)
    found, trials = detect_multilinear_report(c, args.k, seed=args.seed, trials=args.trials)
    params = {"k": args.k, "seed": args.seed, "t": trials}
    return _finish(args, "detect-multilinear", digest, params, {"found": bool(found), "trials_run": trials},
                   f"detect-multilinear k={args.k}: {'yes' if found else 'no'} after {trials} trials",
                   0 if found else 1)


def cmd_bench(args) -> int:
    from .bench import run_suite

    rows = run_suite(args.suite)
    return _finish(args, "bench", None, {"suite": args.suite}, rows, _bench_table(rows), 0)


def _bench_table(rows) -> str:
    lines = []
    for name, table in rows.items():
        lines.append(f"[{name}]")
        for r in table:
            lines.append("  " + "  ".join(f"{k}={_fmt(v)}" for k, v in r.items()))
    return "\n".join(lines)


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.3g}"
    return str(v)


def _finish(args, command, digest, params, result, summary, code, stats=None) -> int:
    report = {
        "command": command,
        "input_digest": digest,
        "parameters": params,
        "result": result,
        "wall_time": round(time.perf_counter() - args._t0, 6),
    }
    if stats is not None:
        report["trial_stats"] = stats
    _emit(report, summary)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="extensor-coding",
        description="k-path detection and counting, subgraph counting and multilinear "
                    "term detection with extensor codings.",
        epilog=f"The default seed is read from ${SEED_ENV} (0 if unset). "
               "Exit codes: 0 found, 1 not found, 2 error.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def seed_opt(sp):
        sp.add_argument("--seed", type=int, default=None, help=f"master seed (default ${SEED_ENV} or 0)")

    d = sub.add_parser("detect", help="decide whether G has a k-path", epilog=DETECT_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    d.add_argument("graph", help="graph file")
    d.add_argument("--k", type=int, required=True, help="path length in vertices")
    d.add_argument("--mode", default="deterministic",
                   help="unambiguous | deterministic | random-edge | representative | few:C")
    seed_opt(d)
    d.set_defaults(func=cmd_detect)

    c = sub.add_parser("count-paths", help="(1 +- eps)-estimate of the number of k-paths")
    c.add_argument("graph", help="graph file")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--eps", type=Fraction, required=True, help="relative error, e.g. 0.2 or 1/5")
    c.add_argument("--trials", type=int, default=None, help="override t = ceil(100 k^3 / eps^2)")
    c.add_argument("--dist", choices=["pm1", "sqrt3"], default="pm1", help="entry distribution")
    c.add_argument("--jobs", type=int, default=1, help="worker processes (never changes results)")
    seed_opt(c)
    c.set_defaults(func=cmd_count_paths)

    s = sub.add_parser("count-sub", help="(1 +- eps)-estimate of the number of copies of H in G")
    s.add_argument("pattern", help="pattern graph file H")
    s.add_argument("host", help="host graph file G")
    s.add_argument("--eps", type=Fraction, required=True)
    s.add_argument("--td", default=None, help="path decomposition of H (.td file); default: exhaustive search")
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--dist", choices=["pm1", "sqrt3"], default="pm1")
    s.add_argument("--jobs", type=int, default=1)
    seed_opt(s)
    s.set_defaults(func=cmd_count_sub)

    m = sub.add_parser("detect-multilinear", help="does the circuit's polynomial have a degree-k multilinear term")
    m.add_argument("circuit", help="circuit file")
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--trials", type=int, default=None, help="override the default repetition count")
    seed_opt(m)
    m.set_defaults(func=cmd_detect_multilinear)

    b = sub.add_parser("bench", help="scaling measurements")
    b.add_argument("--suite", choices=["all", "wedge", "walk", "zeon"], default="all")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors, matching the contract
        return int(exc.code or 0)
    args._t0 = time.perf_counter()
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.func(args)
    except (OSError, ValueError, GraphFormatError, CircuitError, TDError, DimensionCapError,
            OverflowError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
