"""Brute-force references for small graphs.

Nothing here calls into the chain engine or the bound formulas; these are
the independent side of every cross-check.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import Graph


class OracleSizeError(ValueError):
    pass


@dataclass(frozen=True)
class OracleLimits:
    max_nodes_chain: int = 7
    max_nodes_path: int = 14
    max_state_space: int = 2_000_000


DEFAULT_LIMITS = OracleLimits()


def _valid_chains(g: Graph, t, p, cand: np.ndarray) -> np.ndarray:
    """Boolean mask over candidate rank vectors (rows of ``cand``)."""
    ok = np.ones(cand.shape[0], dtype=bool)
    for v in range(g.n):
        nbrs = g.neighbors(v)
        around = cand[:, nbrs]
        for i in range(int(g.degree[v]) + 1):
            in_level = cand[:, v] >= i
            # v in G_i needs max(0, i + p_v) neighbors in G_i ...
            enough_inside = (around >= i).sum(axis=1) >= max(0, i + int(p[v]))
            # ... and i neighbors in G_j, j = max(0, i + t_v)
            j = max(0, i + int(t[v]))
            enough_reach = (around >= j).sum(axis=1) >= i
            ok &= ~in_level | (enough_inside & enough_reach)
    return ok


def brute_max_chain(g: Graph, params, limits: OracleLimits = DEFAULT_LIMITS) -> np.ndarray:
    """Pointwise maximum over every rank vector whose chain is [t,p]-separate.

    ``params`` is anything with integer vectors ``.t`` and ``.p``.
    """
    t = np.asarray(params.t, dtype=np.int64)
    p = np.asarray(params.p, dtype=np.int64)
    if (p > g.degree).any():
        raise ValueError("infeasible parameters")
    space = int(np.prod(g.degree.astype(np.float64) + 1))
    if g.n > limits.max_nodes_chain or space > limits.max_state_space:
        raise OracleSizeError(f"chain enumeration over {space} states on {g.n} nodes exceeds limits")
    axes = [np.arange(d + 1, dtype=np.int8) for d in g.degree]
    cand = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, g.n)
    good = cand[_valid_chains(g, t, p, cand)]
    if good.shape[0] == 0:
        raise RuntimeError("no valid rank vector; the all-zero vector should always qualify")
    return good.max(axis=0).astype(np.int64)


def _path_table(g: Graph, limits: OracleLimits):
    if g.n > limits.max_nodes_path:
        raise OracleSizeError(f"path enumeration on {g.n} nodes exceeds limit {limits.max_nodes_path}")
    return kernels.longest_paths(g.indptr, g.indices)


def longest_path_lengths(g: Graph, limits: OracleLimits = DEFAULT_LIMITS) -> tuple[np.ndarray, np.ndarray]:
    """Per-node (longest path ending at v, longest path through v)."""
    ending, containing = _path_table(g, limits)
    return np.asarray(ending), np.asarray(containing)


def brute_longest_from(g: Graph, v: int, limits: OracleLimits = DEFAULT_LIMITS) -> int:
    return int(longest_path_lengths(g, limits)[0][v])


def brute_longest_through(g: Graph, v: int, limits: OracleLimits = DEFAULT_LIMITS) -> int:
    return int(longest_path_lengths(g, limits)[1][v])


def kcore_peeling(g: Graph) -> np.ndarray:
    """Core numbers by repeatedly removing a minimum-degree node."""
    deg = g.degree.astype(np.int64).tolist()
    adj = g.adjacency
    core = [0] * g.n
    removed = [False] * g.n
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    level = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        level = max(level, d)
        core[v] = level
        removed[v] = True
        for u in adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return np.array(core, dtype=np.int64)
