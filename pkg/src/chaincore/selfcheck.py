"""Oracle cross-checks on small generated graphs (``chaincore verify --small``)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import networkx as nx
import numpy as np

from . import chain, oracle
from .bounds import BoundContext, bound_le, bound_le_hat, bound_lm, resolve_girth
from .graph import Graph, GraphError, from_edges
from .relay import TiePolicy, relay_start


def random_graph(rng: np.random.Generator, n: int, p: float, connected: bool = False) -> Graph | None:
    """Seeded G(n, p) as a Graph, or None when it has no edges (or is disconnected if required)."""
    G = nx.gnp_random_graph(n, p, seed=int(rng.integers(2**31)))
    if connected and not nx.is_connected(G):
        return None
    try:
        return from_edges(G.edges())
    except GraphError:
        return None


def random_graphs(seed: int, count: int, n_range=(2, 7), p_choices=(0.2, 0.35, 0.5, 0.7),
                  connected: bool = False) -> Iterator[Graph]:
    rng = np.random.default_rng(seed)
    made = 0
    while made < count:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        g = random_graph(rng, n, float(rng.choice(p_choices)), connected)
        if g is not None:
            made += 1
            yield g


def random_params(g: Graph, rng: np.random.Generator, lo: int = -3, hi: int = 3) -> chain.ParamVectors:
    """Feasible per-node (t, p) with entries in ``[lo, hi]``."""
    t = rng.integers(lo, hi + 1, size=g.n)
    p = np.array([rng.integers(lo, min(hi, int(d)) + 1) for d in g.degree])
    return chain.ParamVectors(t.astype(np.int64), p.astype(np.int64))


@dataclass
class CheckResult:
    name: str
    cases: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


def check_oracle_equivalence(seed: int, graphs: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    fails, cases = [], 0
    for g in random_graphs(seed, graphs):
        for _ in range(3):
            params = random_params(g, rng)
            cases += 1
            got = chain.decompose(g, params)
            want = oracle.brute_max_chain(g, params)
            if not np.array_equal(got, want):
                fails.append(f"{g!r} t={params.t.tolist()} p={params.p.tolist()}: {got} != {want}")
    return CheckResult("decompose == brute_max_chain", cases, fails)


def check_kcore(seed: int, graphs: int) -> CheckResult:
    fails, cases = [], 0
    for g in random_graphs(seed, graphs, n_range=(5, 40), p_choices=(0.1, 0.3, 0.5)):
        cases += 1
        if not np.array_equal(chain.spectrum(g).row(0), oracle.kcore_peeling(g)):
            fails.append(repr(g))
    return CheckResult("spectrum t=0 == k-core peeling", cases, fails)


def check_schedules(seed: int, graphs: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    fails, cases = [], 0
    for g in random_graphs(seed, graphs, n_range=(3, 30)):
        params = random_params(g, rng)
        ref = chain.decompose(g, params)
        for policy in chain.POLICIES:
            for s in range(3):
                cases += 1
                got = chain.decompose(g, params, chain.Schedule(policy, seed=s))
                if not np.array_equal(got, ref):
                    fails.append(f"{g!r} {policy} seed={s}")
    return CheckResult("schedule invariance", cases, fails)


def check_spectrum(seed: int, graphs: int) -> CheckResult:
    fails, cases = [], 0
    for g in random_graphs(seed, graphs, n_range=(3, 30)):
        cases += 1
        sp = chain.spectrum(g)
        if not np.array_equal(sp.row(-sp.lam), g.degree):
            fails.append(f"{g!r}: first row differs from degrees")
        if (np.diff(sp.table, axis=0) > 0).any():
            fails.append(f"{g!r}: rows increase with t")
        for t in sp.ts:
            if not np.array_equal(chain.decompose(g, chain.ParamVectors.constant(g, t)), sp.row(t)):
                fails.append(f"{g!r}: warm start differs from cold start at t={t}")
        if sp.stats.decrements > int(g.degree.sum()) or sp.stats.increments:
            fails.append(f"{g!r}: {sp.stats} exceeds the step bound")
    return CheckResult("spectrum endpoints, monotonicity, warm starts", cases, fails)


def check_bounds(seed: int, graphs: int) -> CheckResult:
    fails, cases = [], 0
    for g in random_graphs(seed, graphs, n_range=(3, 12), connected=True):
        sp = chain.spectrum(g)
        ending, through = oracle.longest_path_lengths(g)
        for mode in ("3", "exact"):
            g_used, exact = resolve_girth(g, mode)
            ctx = BoundContext(sp, g_used, exact)
            for v in range(g.n):
                cases += 1
                hat = bound_le_hat(ctx, v)
                if bound_le(ctx, v) > ending[v] or bound_lm(ctx, v) > through[v] or (
                        hat is not None and hat > ending[v]):
                    fails.append(f"{g!r} v={v} g={g_used}")
    return CheckResult("path bounds below exact longest paths", cases, fails)


def check_relays(seed: int, graphs: int) -> CheckResult:
    fails, cases = [], 0
    for g in random_graphs(seed, graphs, n_range=(3, 12), connected=True):
        sp = chain.spectrum(g)
        ending, _ = oracle.longest_path_lengths(g)
        for v in range(g.n):
            cases += 1
            path = relay_start(g, sp, v, policy=TiePolicy(seed=seed + v))
            if not path.is_simple_path(g) or path.length > ending[v] or path.length < 1:
                fails.append(f"{g!r} v={v}: {path.nodes}")
    return CheckResult("relay paths are simple and within the optimum", cases, fails)


CHECKS: list[tuple[Callable[[int, int], CheckResult], int]] = [
    (check_oracle_equivalence, 60),
    (check_kcore, 60),
    (check_schedules, 20),
    (check_spectrum, 30),
    (check_bounds, 40),
    (check_relays, 20),
]


def run_all(seed: int = 0, scale: float = 1.0) -> list[CheckResult]:
    return [check(seed, max(1, int(count * scale))) for check, count in CHECKS]
