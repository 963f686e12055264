"""Command-line interface.

Subcommands:
  compute        static betweenness scores for a graph -> CSV
  bench          removal/re-insertion benchmark -> CSV + speedup summary
  verify         benchmark in verification mode; exit 1 on any mismatch
  backend-bench  time the compiled kernels against the pure-Python fallback
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

import numpy as np

from . import _kernels
from .apsp import init_apsp
from .bench import BenchConfig, emit_csv, run_experiment
from .engines import ibet_update
from .graph import UpdateEvent, load_edge_list
from .static import brandes_betweenness


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--weighted", action="store_true")


def cmd_compute(args) -> int:
    g = load_edge_list(args.graph, directed=args.directed, weighted=args.weighted)
    bet = brandes_betweenness(g)
    with open(args.out, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["node", "betweenness"])
        for i in range(g.n):
            wr.writerow([g.labels[i], repr(float(bet.scores[i]))])
    print(f"wrote {g.n} scores to {args.out} (n={g.n}, m={g.m})")
    return 0


def _bench_config(args) -> BenchConfig:
    return BenchConfig(
        graph=args.graph,
        trials=args.trials,
        seed=args.seed,
        algos=tuple(args.algos.split(",")),
        directed=args.directed,
        weighted=args.weighted,
        verify=not getattr(args, "no_verify", False),
        counters=getattr(args, "counters", False),
    )


def cmd_bench(args) -> int:
    config = _bench_config(args)
    records, summary = run_experiment(config)
    emit_csv(records, args.out)
    print(f"graph={args.graph} trials={summary['trials']} algos={','.join(summary['algos'])}")
    if "ba_mean_s" in summary:
        print(f"BA mean time: {summary['ba_mean_s']:.3f} s")
    for name, val in sorted(summary["speedups"].items()):
        print(f"geomean speedup {name.replace('_', ' ')}: {val:.2f}x")
    if "max_err" in summary:
        print(f"max |score error| across trials: {summary['max_err']:.3e}")
    print(f"wrote {args.out}")
    return 0


def cmd_verify(args) -> int:
    config = _bench_config(args)
    config.verify = True
    config.tolerance = args.tolerance
    records, summary = run_experiment(config)
    bad = {(t, a) for t, a, _, _ in summary["failed_trials"]}
    for rec in records:
        worst = max((res.max_err or 0.0) for res in rec.results.values())
        status = "MISMATCH" if any(t == rec.trial for t, _ in bad) else "ok"
        print(f"trial {rec.trial}: edge ({rec.u},{rec.v}) max_err={worst:.3e} {status}")
    print(f"{len(records) - len({t for t, _ in bad})}/{len(records)} trials verified")
    return 1 if bad else 0


def cmd_backend_bench(args) -> int:
    g0 = load_edge_list(args.graph, directed=args.directed, weighted=args.weighted)
    if "compiled" not in _kernels.available_backends():
        print("compiled backend not built; nothing to compare", file=sys.stderr)
        return 1
    edges = g0.edge_list()
    rng = np.random.default_rng(args.seed)
    picks = rng.choice(len(edges), size=min(args.trials, len(edges)), replace=False)
    rows = []
    for backend in ("compiled", "pure"):
        with _kernels.use_backend(backend):
            g = g0.copy()
            t0 = time.perf_counter()
            bet = brandes_betweenness(g)
            t_static = time.perf_counter() - t0
            apsp = init_apsp(g)
            t_upd = 0.0
            for pick in picks:
                u, v, w = edges[int(pick)]
                removed = g.remove_edge(u, v)
                apsp2 = init_apsp(g)
                bet2 = brandes_betweenness(g)
                t0 = time.perf_counter()
                ibet_update(g, apsp2, bet2, UpdateEvent(u, v, removed))
                t_upd += time.perf_counter() - t0
            rows.append((backend, t_static, t_upd / len(picks)))
    print(f"{'backend':<10} {'static betweenness [s]':>24} {'mean incremental update [s]':>30}")
    for backend, t_static, t_upd in rows:
        print(f"{backend:<10} {t_static:>24.4f} {t_upd:>30.6f}")
    ratio_static = rows[1][1] / rows[0][1]
    ratio_upd = rows[1][2] / rows[0][2]
    print(f"compiled is {ratio_static:.1f}x faster on static, {ratio_upd:.1f}x on updates")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="dynbet",
                                 description="dynamic betweenness centrality toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="static betweenness scores")
    _add_graph_args(p)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("bench", help="incremental-update benchmark")
    _add_graph_args(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algos", default="ba,ibet,kdb,kwcc",
                   help="comma list from: ba,ibet,kdb,kwcc")
    p.add_argument("--no-verify", action="store_true",
                   help="skip the per-trial mismatch check")
    p.add_argument("--counters", action="store_true",
                   help="collect operation counters (slower)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("verify", help="verify engines against recomputation")
    _add_graph_args(p)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algos", default="ibet,kdb,kwcc")
    p.add_argument("--tolerance", type=float, default=None,
                   help="absolute score tolerance (default: 1e-8 scaled to the graph)")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("backend-bench",
                       help="compare compiled kernels against the pure fallback")
    _add_graph_args(p)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_backend_bench)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
