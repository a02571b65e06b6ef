"""Locating edge-list files and building generated test graphs."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import networkx as nx

from .graph import Graph, ParseOptions, from_edges, read_graph

DATA_ENV = "CHAINCORE_DATA"
FETCH_HINT = (
    "place the edge list in the data directory (env CHAINCORE_DATA) or run "
    "scripts/fetch_datasets.py --help"
)


@dataclass(frozen=True)
class Reference:
    """Published summary statistics for a benchmark network."""

    n: int
    edges: int
    k_max: int
    avg_degree: float
    lam: int


TABLE1 = {
    "email": Reference(1133, 5451, 71, 9.62, 70),
    "jazz": Reference(198, 742, 100, 27.69, 99),
    "pb": Reference(1222, 16714, 351, 27.35, 350),
    "router": Reference(5022, 6258, 106, 2.49, 105),
    "usair": Reference(332, 2126, 139, 12.80, 138),
    "email2": Reference(12625, 20362, 576, 3.22566, 575),
}

SUFFIXES = ("", ".edges", ".txt", ".csv", ".tsv")


def data_dir() -> Path | None:
    value = os.environ.get(DATA_ENV)
    return Path(value) if value else None


def locate(name: str) -> Path:
    """Resolve a path, falling back to ``$CHAINCORE_DATA/<name>[.edges|.txt|...]``."""
    candidates = [Path(name)]
    root = data_dir()
    if root is not None:
        candidates += [root / f"{name}{suffix}" for suffix in SUFFIXES]
    for path in candidates:
        if path.is_file():
            return path
    raise FileNotFoundError(f"dataset {name!r} not found; {FETCH_HINT}")


def generate(spec: str) -> Graph:
    """Build a seeded random graph from ``ba:N:M:SEED``, ``er:N:P:SEED`` or ``gnm:N:M:SEED``."""
    kind, *args = spec.split(":")
    try:
        if kind == "ba":
            n, m, seed = int(args[0]), int(args[1]), int(args[2])
            G = nx.barabasi_albert_graph(n, m, seed=seed)
        elif kind == "er":
            n, p, seed = int(args[0]), float(args[1]), int(args[2])
            G = nx.gnp_random_graph(n, p, seed=seed)
        elif kind == "gnm":
            n, m, seed = int(args[0]), int(args[1]), int(args[2])
            G = nx.gnm_random_graph(n, m, seed=seed)
        else:
            raise ValueError
    except (ValueError, IndexError):
        raise ValueError(f"bad generator spec {spec!r}; expected ba:N:M:SEED, er:N:P:SEED or gnm:N:M:SEED") from None
    return from_edges(G.edges())


def open_graph(spec: str, options: ParseOptions | None = None) -> Graph:
    if spec.split(":", 1)[0] in ("ba", "er", "gnm") and not Path(spec).exists():
        return generate(spec)
    return read_graph(locate(spec), options)
