"""Acceptance criteria, one test each.

Every test records a single ``PASS``/``FAIL``/``SKIP`` line (shown with
``-s`` and repeated in the terminal summary) and then asserts.
"""

import math
import time

import networkx as nx
import numpy as np
import pytest

from chaincore import chain, oracle
from chaincore.bench import BenchConfig, run_bench
from chaincore.bounds import BoundContext, bound_le, bound_le_hat, bound_lm, path_bounds, resolve_girth
from chaincore.datasets import TABLE1, data_dir, locate
from chaincore.graph import from_edges, lambda_value, read_graph, stats
from chaincore.selfcheck import random_graphs, random_params

pytestmark = pytest.mark.acceptance

RESULTS: list[str] = []


def record(name: str, ok: bool, detail: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def test_kcore_equivalence():
    start = time.perf_counter()
    bad = 0
    count = 0
    for g in random_graphs(101, 200, n_range=(5, 40), p_choices=(0.1, 0.3, 0.5)):
        count += 1
        bad += not np.array_equal(chain.spectrum(g).row(0), oracle.kcore_peeling(g))
    took = time.perf_counter() - start
    ok = bad == 0 and count == 200 and took < 10
    assert record("k-core equivalence", ok, f"{count - bad}/{count} graphs match, {took:.2f}s (< 10s)")


def test_oracle_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(202)
    cases = bad = 0
    for g in random_graphs(202, 500, n_range=(2, 7)):
        for _ in range(5):
            params = random_params(g, rng, -3, 3)
            cases += 1
            bad += not np.array_equal(chain.decompose(g, params), oracle.brute_max_chain(g, params))
    took = time.perf_counter() - start
    ok = bad == 0 and cases == 2500 and took < 120
    assert record("oracle equivalence", ok, f"{cases - bad}/{cases} (graph, params) cases, {took:.1f}s (< 120s)")


def test_schedule_invariance_and_warm_start():
    rng = np.random.default_rng(303)
    bad_sched = bad_warm = 0
    for g in random_graphs(303, 50, n_range=(3, 30)):
        params = random_params(g, rng)
        ref = chain.decompose(g, params)
        for policy in chain.POLICIES:
            for seed in range(3):
                bad_sched += not np.array_equal(chain.decompose(g, params, chain.Schedule(policy, seed)), ref)
        sp = chain.spectrum(g)
        for t in sp.ts:
            cold = chain.decompose(g, chain.ParamVectors.constant(g, t))
            bad_warm += not np.array_equal(cold, sp.row(t))
    ok = bad_sched == 0 and bad_warm == 0
    assert record("schedule invariance & warm start", ok,
                  f"{bad_sched} schedule mismatches over 50x9 runs, {bad_warm} warm/cold row mismatches")


def _test_graphs():
    yield from random_graphs(404, 60, n_range=(3, 30))
    for G in (nx.barabasi_albert_graph(300, 2, seed=1), nx.star_graph(9), nx.path_graph(7),
              nx.complete_graph(5), nx.petersen_graph()):
        yield from_edges(G.edges())


def test_endpoints_and_monotonicity():
    bad = 0
    count = 0
    for g in _test_graphs():
        count += 1
        sp = chain.spectrum(g)
        lam = lambda_value(g)
        beyond = chain.decompose(g, chain.ParamVectors.constant(g, -lam - 1))
        bad += not (sp.lam == lam and np.array_equal(sp.row(-lam), g.degree)
                    and not (np.diff(sp.table, axis=0) > 0).any()
                    and np.array_equal(beyond, g.degree))
    assert record("endpoints & monotonicity", bad == 0,
                  f"{count - bad}/{count} graphs: C_(-lam) = d, rows non-increasing, t = -lam-1 gives d")


def test_bound_soundness():
    start = time.perf_counter()
    violations = checks = 0
    count = 0
    for g in random_graphs(505, 300, n_range=(3, 14), p_choices=(0.25, 0.35, 0.5, 0.7), connected=True):
        count += 1
        sp = chain.spectrum(g)
        ending, through = oracle.longest_path_lengths(g)
        for mode in ("3", "exact"):
            g_used, exact = resolve_girth(g, mode)
            ctx = BoundContext(sp, g_used, exact)
            pb = path_bounds(ctx)
            for v in range(g.n):
                checks += 1
                hat = bound_le_hat(ctx, v)
                violations += (bound_le(ctx, v) > ending[v]) + (bound_lm(ctx, v) > through[v]) + (
                    hat is not None and hat > ending[v])
                violations += (pb.le[v] > ending[v]) + (pb.lm[v] > through[v]) + (
                    bool(pb.has_le_hat[v]) and pb.le_hat[v] > ending[v])
    took = time.perf_counter() - start
    ok = violations == 0 and count == 300 and took < 300
    assert record("bound soundness", ok,
                  f"{violations} violations over {checks} node checks on {count} graphs, {took:.1f}s (< 300s)")


def test_tight_cases():
    k4 = from_edges(nx.complete_graph(4).edges())
    c5 = from_edges(nx.cycle_graph(5).edges())
    results = []
    for g, mode, want in ((k4, "3", 3), (c5, "exact", 4)):
        g_used, exact = resolve_girth(g, mode)
        ctx = BoundContext(chain.spectrum(g), g_used, exact)
        ending, through = oracle.longest_path_lengths(g)
        results += [bound_le(ctx, v) == bound_lm(ctx, v) == ending[v] == through[v] == want
                    for v in range(g.n)]
    assert record("tight cases", all(results), "K4: L_e = L_m = 3 = optimum; C5 (g=5): L_e = L_m = 4 = optimum")


def test_step_count_bound_and_scale():
    bad = 0
    count = 0
    for g in _test_graphs():
        count += 1
        fp = chain.FixedPointStats()
        chain.decompose(g, chain.ParamVectors.constant(g, 0), stats=fp)
        bad += fp.decrements > int(g.degree.sum()) or fp.increments != 0

    G = nx.barabasi_albert_graph(5000, 1, seed=2024)
    rng = np.random.default_rng(2024)
    while G.number_of_edges() < 6300:
        u, v = rng.integers(5000, size=2)
        if u != v:
            G.add_edge(int(u), int(v))
    g = from_edges(G.edges())
    start = time.perf_counter()
    sp = chain.spectrum(g)
    took = time.perf_counter() - start
    # warm starts only move down, so the whole spectrum stays within one sum(deg)
    bound_ok = sp.stats.decrements <= int(g.degree.sum()) and sp.stats.increments == 0
    ok = bad == 0 and took < 60 and bound_ok
    assert record("step-count bound & scale", ok,
                  f"{count - bad}/{count} graphs within sum(deg) decrements; spectrum on n={g.n}, "
                  f"m={g.edge_count}, lambda={sp.lam}, {sp.stats.decrements} decrements in {took:.2f}s (< 60s)")


def _avg_matches(name: str, avg: float, published: float) -> bool:
    if abs(avg - published) <= 0.005:
        return True
    # some published averages are truncated rather than rounded (12.807 printed as 12.80)
    decimals = len(repr(published).split(".")[1])
    return name != "email" and math.floor(avg * 10**decimals) / 10**decimals == published


@pytest.mark.parametrize("name", sorted(TABLE1))
def test_table1_reproduction(name):
    ref = TABLE1[name]
    try:
        path = locate(name) if data_dir() is not None else None
    except FileNotFoundError:
        path = None
    if path is None:
        RESULTS.append(f"SKIP table 1 {name}: dataset not present under $CHAINCORE_DATA")
        pytest.skip(f"{name} dataset not available")
    st = stats(read_graph(path), with_girth=False)
    got = (st.n, st.edge_count, st.k_max, st.lam)
    ok = got == (ref.n, ref.edges, ref.k_max, ref.lam) and _avg_matches(name, float(st.avg_degree), ref.avg_degree)
    assert record(f"table 1 {name}", ok,
                  f"n={st.n} edges={st.edge_count} k_max={st.k_max} avg={float(st.avg_degree):.4f} "
                  f"lambda={st.lam}; expected {ref.n}/{ref.edges}/{ref.k_max}/{ref.avg_degree}/{ref.lam}")


@pytest.fixture(scope="module")
def ba_report():
    cfg = BenchConfig(graph="ba:1000:3:7", source_count=30, trials_per_source=200, master_seed=0)
    start = time.perf_counter()
    report = run_bench(cfg)
    return report, time.perf_counter() - start


def test_relay_direction_on_scale_free_graph(ba_report):
    report, took = ba_report
    agg = report.aggregate
    chainrank, zerocore = agg["chainrank"], agg["zerocore"]
    ok = chainrank["gain"] > 0 and chainrank["mean"] >= zerocore["mean"] * 0.99 and took < 120
    assert record("relay direction (BA n=1000, m=3)", ok,
                  f"chainrank mean {chainrank['mean']:.2f} gain {chainrank['gain']:+.3f}; "
                  f"zerocore {zerocore['mean']:.2f}; random {agg['random']['mean']:.2f}; "
                  f"maxdeg {agg['maxdeg']['mean']:.2f}; {took:.1f}s (< 120s)")


def test_classical_comparison_report(ba_report):
    report, _ = ba_report
    comp = report.comparison
    keys = {"max_L_e", "max_L_m", "erdos_gallai", "min_degree", "longest_relay_found"}
    g = from_edges(nx.barabasi_albert_graph(1000, 3, seed=7).edges())
    ok = (set(comp) == keys
          and comp["min_degree"] == int(g.degree.min())
          and comp["erdos_gallai"] == -(-2 * g.edge_count // g.n)
          and comp["max_L_e"] <= comp["max_L_m"]
          and all(isinstance(comp[k], int) and comp[k] >= 0 for k in keys))
    assert record("classical comparison", ok,
                  ", ".join(f"{k}={comp[k]}" for k in sorted(comp)))
