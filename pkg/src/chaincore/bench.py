"""Relay benchmark: many sources, many seeded trials, gains over random walks."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import chain
from .bounds import BoundContext, classical_bounds, path_bounds, resolve_girth
from .datasets import open_graph
from .graph import Graph, stats
from .relay import ALGORITHMS, T_CHOICES, Walker, tie_draws

# stream tags; part of the seed derivation, so never renumber
ALGO_TAGS = {"random": 0, "maxdeg": 1, "zerocore": 2, "chainrank": 3}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class BenchConfig:
    graph: str = ""
    source_count: int = 100
    trials_per_source: int = 1000
    algorithms: tuple[str, ...] = ("chainrank", "zerocore", "random", "maxdeg")
    master_seed: int = 0
    girth_mode: str = "3"
    output_format: str = "csv"
    t_choice: str = "smallest-t"
    workers: int = 1

    def validate(self, n: int) -> None:
        if not self.algorithms:
            raise ConfigError("at least one algorithm is required")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ConfigError(f"unknown algorithms {unknown}; choose from {sorted(ALGORITHMS)}")
        if len(set(self.algorithms)) != len(self.algorithms):
            raise ConfigError("algorithms must not repeat")
        if "random" not in self.algorithms:
            raise ConfigError("'random' must be included; it is the normalization baseline")
        if not 1 <= self.source_count <= n:
            raise ConfigError(f"source_count must be in [1, {n}], got {self.source_count}")
        if self.trials_per_source < 1:
            raise ConfigError("trials_per_source must be at least 1")
        if self.output_format not in ("csv", "json"):
            raise ConfigError("output_format must be csv or json")
        if self.t_choice not in T_CHOICES:
            raise ConfigError(f"t_choice must be one of {sorted(T_CHOICES)}")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")


@dataclass(frozen=True)
class SourceResult:
    source: str
    algorithm: str
    mean: float
    max: int
    min: int
    gain: float


@dataclass
class BenchReport:
    config: BenchConfig
    rows: list[SourceResult]
    aggregate: dict[str, dict[str, float]]
    provenance: dict
    comparison: dict
    wall_time: float = field(default=0.0, compare=False)

    def rows_for(self, algorithm: str) -> list[SourceResult]:
        return [r for r in self.rows if r.algorithm == algorithm]


def trial_rng(master_seed: int, source: int, trial: int, algorithm: str) -> np.random.Generator:
    seq = np.random.SeedSequence(master_seed, spawn_key=(source, trial, ALGO_TAGS[algorithm]))
    return np.random.default_rng(seq)


def _lengths(walker: Walker, cfg: BenchConfig, source: int, algorithm: str) -> np.ndarray:
    out = np.empty(cfg.trials_per_source, dtype=np.int64)
    for trial in range(cfg.trials_per_source):
        draws = tie_draws(trial_rng(cfg.master_seed, source, trial, algorithm), walker.g.n)
        out[trial] = len(walker.walk(source, algorithm, draws)) - 1
    return out


def run_bench(cfg: BenchConfig, graph: Graph | None = None) -> BenchReport:
    started = time.perf_counter()
    g = graph if graph is not None else open_graph(cfg.graph)
    cfg.validate(g.n)
    spec = chain.spectrum(g)
    g_used, exact = resolve_girth(g, cfg.girth_mode)

    pick = np.random.default_rng(np.random.SeedSequence(cfg.master_seed))
    sources = np.sort(pick.choice(g.n, size=cfg.source_count, replace=False)).tolist()

    def per_source(src):
        walker = Walker(g, spec, g_used, cfg.t_choice)
        return src, {a: _lengths(walker, cfg, src, a) for a in cfg.algorithms}

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            results = dict(pool.map(per_source, sources))
    else:
        results = dict(map(per_source, sources))

    rows = []
    per_algo_gains: dict[str, list[float]] = {a: [] for a in cfg.algorithms}
    per_algo_means: dict[str, list[float]] = {a: [] for a in cfg.algorithms}
    for src in sources:
        base = float(results[src]["random"].mean())
        for algo in cfg.algorithms:
            lengths = results[src][algo]
            mean = float(lengths.mean())
            gain = (mean - base) / base
            per_algo_means[algo].append(mean)
            per_algo_gains[algo].append(gain)
            rows.append(SourceResult(g.labels[src], algo, mean, int(lengths.max()), int(lengths.min()), gain))
    aggregate = {
        a: {"mean": float(np.mean(per_algo_means[a])), "gain": float(np.mean(per_algo_gains[a]))}
        for a in cfg.algorithms
    }

    pb = path_bounds(BoundContext(spec, g_used, exact))
    cb = classical_bounds(g)
    comparison = {
        "max_L_e": int(pb.le.max()),
        "max_L_m": int(pb.lm.max()),
        "erdos_gallai": cb.erdos_gallai,
        "min_degree": cb.min_degree,
        "longest_relay_found": max(r.max for r in rows),
    }
    gs = stats(g, with_girth=False).as_dict()
    gs["girth"] = None if exact is None else ("inf" if exact == float("inf") else int(exact))
    provenance = {
        "graph": gs,
        "config": asdict(cfg),
        "lambda": spec.lam,
        "girth_used": g_used,
        "sources": [g.labels[s] for s in sources],
    }
    return BenchReport(cfg, rows, aggregate, provenance, comparison, time.perf_counter() - started)


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def _ordered_rows(report: BenchReport) -> list[SourceResult]:
    # non-random blocks sorted by gain ascending, the x-axis order of a per-source gain plot
    out = []
    for algo in report.config.algorithms:
        block = report.rows_for(algo)
        if algo == "random":
            out += block
        else:
            out += sorted(block, key=lambda r: (r.gain, r.source))
    return out


def emit_report(report: BenchReport, fmt: str = "csv", include_timing: bool = False) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["source", "algorithm", "mean", "gain"])
        for r in _ordered_rows(report):
            writer.writerow([r.source, r.algorithm, _fmt(r.mean), _fmt(r.gain)])
        for algo in report.config.algorithms:
            agg = report.aggregate[algo]
            writer.writerow(["aggregate", algo, _fmt(agg["mean"]), _fmt(agg["gain"])])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "provenance": dict(report.provenance),
            "per_source": [
                {
                    "source": r.source,
                    "algorithm": r.algorithm,
                    "mean": round(r.mean, 4),
                    "max": r.max,
                    "min": r.min,
                    "gain": round(r.gain, 4),
                }
                for r in _ordered_rows(report)
            ],
            "aggregate": {
                a: {"mean": round(v["mean"], 4), "gain": round(v["gain"], 4)}
                for a, v in report.aggregate.items()
            },
            "comparison": report.comparison,
        }
        if include_timing:
            doc["provenance"]["wall_time_s"] = round(report.wall_time, 3)
        return canonical_json(doc)
    raise ValueError(f"unknown report format {fmt!r}")


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
