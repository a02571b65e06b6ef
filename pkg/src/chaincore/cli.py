"""Command-line entry point.

Exit status: 0 on success, 1 on bad input (usage, missing file, invalid
parameters), 2 on internal failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__, chain, kernels
from .bench import BenchConfig, emit_report, run_bench
from .bounds import BoundContext, path_bounds, resolve_girth
from .datasets import open_graph
from .graph import GraphError, ParseOptions, stats
from .relay import ALGORITHMS, T_CHOICES, TiePolicy, Walker, relay_containing, tie_draws
from .selfcheck import run_all

log = logging.getLogger("chaincore")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _graph(args):
    return open_graph(args.graph, ParseOptions(allow_extra_columns=args.extra_columns))


def _params(g, args) -> chain.ParamVectors:
    if args.params:
        t = np.zeros(g.n, dtype=np.int64)
        p = -g.degree.astype(np.int64)
        with open(args.params, encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                v = g.node(row["node_label"])
                t[v] = int(row["t"])
                if row.get("p", "").strip():
                    p[v] = int(row["p"])
        return chain.ParamVectors(t, p)
    p = None if args.p == "neg-degree" else int(args.p)
    return chain.ParamVectors.constant(g, args.t, p)


def _write_sidecar(path, fp_stats: chain.FixedPointStats) -> None:
    if path:
        Path(path).write_text(json.dumps(fp_stats.sidecar(), sort_keys=True) + "\n", encoding="utf-8")


def cmd_stats(args, out):
    g = _graph(args)
    st = stats(g, with_girth=args.girth == "exact")
    for key, value in st.as_dict().items():
        if value is None:
            continue
        out.write(f"{key}={value}\n")


def cmd_decompose(args, out):
    g = _graph(args)
    fp = chain.FixedPointStats()
    ranks = chain.decompose(g, _params(g, args), chain.Schedule(args.schedule, args.seed), fp)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["node_label", "rank"])
    for v in range(g.n):
        w.writerow([g.labels[v], int(ranks[v])])
    _write_sidecar(args.sidecar, fp)


def cmd_spectrum(args, out):
    g = _graph(args)
    sp = chain.spectrum(g, chain.Schedule(args.schedule, args.seed))
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["node_label"] + [f"t={t}" for t in sp.ts])
    for v in range(g.n):
        w.writerow([g.labels[v]] + sp.column(v).tolist())
    _write_sidecar(args.sidecar, sp.stats)


def cmd_bounds(args, out):
    g = _graph(args)
    sp = chain.spectrum(g)
    g_used, exact = resolve_girth(g, args.girth)
    pb = path_bounds(BoundContext(sp, g_used, exact))
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["node_label", "L_e", "L_m", "L_e_hat", "argmax_t_Le"])
    for v in range(g.n):
        hat = pb.le_hat_or_none(v)
        w.writerow([g.labels[v], int(pb.le[v]), int(pb.lm[v]), "" if hat is None else hat,
                    int(pb.argmax_le[v])])


def cmd_relay(args, out):
    g = _graph(args)
    v = g.node(args.source)
    if args.trials < 1:
        raise ValueError("--trials must be at least 1")
    needs_spectrum = args.algo in ("chainrank", "zerocore") or args.containing
    sp = chain.spectrum(g) if needs_spectrum else None
    g_used, _ = resolve_girth(g, args.girth)
    walker = Walker(g, sp, g_used, args.t_choice)
    lengths = []
    out.write("trial,length,path\n")
    for trial in range(args.trials):
        seq = np.random.SeedSequence(args.seed, spawn_key=(v, trial))
        if args.containing:
            nodes = relay_containing(g, sp, v, g_used, TiePolicy(args.t_choice, seq)).nodes
        else:
            nodes = walker.walk(v, args.algo, tie_draws(np.random.default_rng(seq), g.n))
        lengths.append(len(nodes) - 1)
        out.write(f"{trial},{len(nodes) - 1},{' '.join(g.labels[u] for u in nodes)}\n")
    out.write("mean,max,min\n")
    out.write(f"{np.mean(lengths):.4f},{max(lengths)},{min(lengths)}\n")


def cmd_bench(args, out):
    cfg = BenchConfig(
        graph=args.graph,
        source_count=args.sources,
        trials_per_source=args.trials,
        algorithms=tuple(a.strip() for a in args.algos.split(",") if a.strip()),
        master_seed=args.seed,
        girth_mode=args.girth,
        output_format=args.format,
        t_choice=args.t_choice,
        workers=args.workers,
    )
    g = _graph(args)
    text = emit_report(run_bench(cfg, g), cfg.output_format, include_timing=args.timing)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)


def cmd_verify(args, out):
    if not args.small:
        raise UsageError("verify: only --small is supported")
    results = run_all(args.seed, args.scale)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        out.write(f"{status} {res.name} ({res.cases} cases)\n")
        for msg in res.failures[:5]:
            out.write(f"    {msg}\n")
    return 0 if all(r.passed for r in results) else 1


def _add_graph(p):
    p.add_argument("graph", help="edge-list path, dataset name under $CHAINCORE_DATA, or ba:/er:/gnm: spec")
    p.add_argument("--extra-columns", action="store_true", help="ignore columns beyond the first two")


def _add_girth(p):
    p.add_argument("--girth", default="3", help="exact | 3 | <int> (default 3)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chaincore", description="Chain decompositions, longest-path bounds and local relays on graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({kernels.BACKEND})")
    parser.add_argument("--config", help="key=value file supplying defaults for the subcommand's flags")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("stats", help="graph size, degrees, lambda and girth")
    _add_graph(p)
    p.add_argument("--girth", choices=("exact", "skip"), default="exact")
    p.set_defaults(func=cmd_stats)

    for name, func, helptext in (("decompose", cmd_decompose, "maximal chain ranks for one (t, p)"),
                                 ("spectrum", cmd_spectrum, "ranks for every t from -lambda to 0")):
        p = sub.add_parser(name, help=helptext)
        _add_graph(p)
        if name == "decompose":
            p.add_argument("--t", type=int, default=0)
            p.add_argument("--p", default="neg-degree", help="integer or neg-degree (p_v = -deg v)")
            p.add_argument("--params", help="CSV with node_label,t[,p] overriding --t/--p")
        p.add_argument("--schedule", choices=chain.POLICIES, default="round-robin")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--sidecar", help="write {decrements, sweeps} JSON here")
        p.set_defaults(func=func)

    p = sub.add_parser("bounds", help="per-node longest-path lower bounds")
    _add_graph(p)
    _add_girth(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("relay", help="relay paths from one source")
    _add_graph(p)
    p.add_argument("--source", required=True)
    p.add_argument("--algo", choices=sorted(ALGORITHMS), default="chainrank")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t-choice", choices=sorted(T_CHOICES), default="smallest-t")
    p.add_argument("--containing", action="store_true", help="grow two arms so the source sits inside the path")
    _add_girth(p)
    p.set_defaults(func=cmd_relay)

    p = sub.add_parser("bench", help="relay benchmark with gains over random paths")
    _add_graph(p)
    p.add_argument("--sources", type=int, default=100)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--algos", default="chainrank,zerocore,random,maxdeg")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--t-choice", choices=sorted(T_CHOICES), default="smallest-t")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output")
    p.add_argument("--timing", action="store_true", help="include wall time (makes output non-reproducible)")
    _add_girth(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="oracle cross-checks")
    p.add_argument("--small", action="store_true", help="run the brute-force suite on small generated graphs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=float, default=1.0, help="multiply the number of generated graphs")
    p.set_defaults(func=cmd_verify)
    return parser


def read_config(path) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(parser, argv, config_path):
    values = read_config(config_path)
    ns = parser.parse_args(argv)
    subparser = parser._subparsers._group_actions[0].choices[ns.command]
    known = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, raw in values.items():
        action = known.get(key)
        if action is None:
            raise UsageError(f"{config_path}: unknown key {key!r} for {ns.command}")
        if action.const is True:
            defaults[key] = raw.lower() in ("1", "true", "yes")
        else:
            defaults[key] = action.type(raw) if action.type else raw
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            args = _apply_config(parser, argv, args.config)
        if args.command is None:
            parser.print_help(sys.stderr)
            return 1
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        status = args.func(args, out)
        return status or 0
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (ValueError, GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
