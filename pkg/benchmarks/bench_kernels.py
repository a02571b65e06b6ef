"""Time the numba kernels against the numpy fallback.

Each backend runs in its own interpreter because the choice is made at
import time (``CHAINCORE_NO_NUMBA``). Numba timings exclude compilation:
every workload runs once to warm up before being timed.

    python3 benchmarks/bench_kernels.py --graph ba:2000:3:1 --repeat 3
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from chaincore import chain, kernels
from chaincore.datasets import open_graph
from chaincore.graph import girth
from chaincore.relay import Walker, tie_draws

spec, repeat, walks = sys.argv[1], int(sys.argv[2]), int(sys.argv[3])
g = open_graph(spec)
sp = chain.spectrum(g)
walker = Walker(g, sp)
rng = np.random.default_rng(0)
draws = [tie_draws(rng, g.n) for _ in range(walks)]
sources = rng.integers(g.n, size=walks)

def relays():
    for v, d in zip(sources, draws):
        walker.walk(int(v), "chainrank", d)

work = {
    "spectrum": lambda: chain.spectrum(g),
    "kcore_row": lambda: chain.decompose(g, chain.ParamVectors.constant(g, 0)),
    "girth": lambda: girth(g),
    "relay_x%d" % walks: relays,
}
out = {"backend": kernels.BACKEND, "n": g.n, "m": g.edge_count, "lambda": sp.lam, "times": {}}
for name, fn in work.items():
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out["times"][name] = best
print(json.dumps(out))
"""


def run_backend(graph: str, repeat: int, walks: int, numpy_only: bool) -> dict:
    env = dict(os.environ)
    if numpy_only:
        env["CHAINCORE_NO_NUMBA"] = "1"
    else:
        env.pop("CHAINCORE_NO_NUMBA", None)
    proc = subprocess.run([sys.executable, "-c", WORKER, graph, str(repeat), str(walks)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--graph", default="ba:2000:3:1", help="edge list, dataset name or generator spec")
    ap.add_argument("--repeat", type=int, default=3, help="timed runs per workload (best is kept)")
    ap.add_argument("--walks", type=int, default=200, help="relay walks per timed run")
    args = ap.parse_args(argv)

    fast = run_backend(args.graph, args.repeat, args.walks, numpy_only=False)
    slow = run_backend(args.graph, args.repeat, args.walks, numpy_only=True)
    print(f"graph {args.graph}: n={fast['n']} m={fast['m']} lambda={fast['lambda']}")
    print(f"{'workload':<14}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    for name, t_fast in fast["times"].items():
        t_slow = slow["times"][name]
        print(f"{name:<14}{t_fast * 1e3:>10.2f}ms{t_slow * 1e3:>10.2f}ms{t_slow / max(t_fast, 1e-9):>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
