"""Simple undirected graphs in CSR form, edge-list ingestion and summary stats."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, TextIO

import numpy as np

from . import kernels

INFINITE = math.inf

_SPLIT = re.compile(r"[,\s]+")


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, lineno: int, line: str, reason: str = "expected two node labels"):
        super().__init__(f"line {lineno}: {reason}: {line.strip()!r}")
        self.lineno = lineno


@dataclass(frozen=True)
class ParseOptions:
    comment_prefixes: tuple[str, ...] = ("#", "%")
    # Extra columns (weights, timestamps) are ignored instead of rejected.
    allow_extra_columns: bool = False


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph on ids ``0..n-1``.

    ``indptr``/``indices`` hold the sorted adjacency in CSR layout, so the
    neighbors of ``v`` are ``indices[indptr[v]:indptr[v + 1]]``.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[str, ...]
    dropped_self_loops: int = 0
    dropped_duplicate_edges: int = 0
    dropped_isolated_nodes: int = 0
    label_map: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        object.__setattr__(self, "label_map", {lab: i for i, lab in enumerate(self.labels)})
        deg = np.diff(self.indptr)
        deg.setflags(write=False)
        object.__setattr__(self, "_degree", deg)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def degree(self) -> np.ndarray:
        return self._degree

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @property
    def adjacency(self) -> list[list[int]]:
        return [self.neighbors(v).tolist() for v in range(self.n)]

    def edges(self) -> Iterable[tuple[int, int]]:
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < v:
                    yield u, int(v)

    def node(self, label: str) -> int:
        try:
            return self.label_map[str(label)]
        except KeyError:
            raise GraphError(f"unknown node label {label!r}") from None

    def labeled_edges(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset((self.labels[u], self.labels[v])) for u, v in self.edges())

    def __eq__(self, other):
        # Equality of labeled graphs; internal id order is a loading artifact.
        if not isinstance(other, Graph):
            return NotImplemented
        return set(self.labels) == set(other.labels) and self.labeled_edges() == other.labeled_edges()

    def __hash__(self):
        return hash(self.labeled_edges())

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"


def from_edges(edges: Iterable[tuple[object, object]]) -> Graph:
    """Build a Graph from labeled pairs, dropping loops and repeated edges.

    Labels are densified to ids in order of first appearance.
    """
    label_ids: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    loops = dups = 0
    for a, b in edges:
        a, b = str(a), str(b)
        ia = label_ids.setdefault(a, len(label_ids))
        ib = label_ids.setdefault(b, len(label_ids))
        if ia == ib:
            loops += 1
            continue
        key = (ia, ib) if ia < ib else (ib, ia)
        if key in seen:
            dups += 1
            continue
        seen.add(key)
    return _assemble(list(label_ids), seen, loops, dups)


def _assemble(labels: list[str], edge_set: set[tuple[int, int]], loops: int, dups: int) -> Graph:
    if not edge_set:
        raise GraphError("graph has no edges")
    pairs = np.array(sorted(edge_set), dtype=np.int64).reshape(-1, 2)
    deg = np.bincount(pairs.ravel(), minlength=len(labels))
    keep = np.flatnonzero(deg > 0)
    isolated = len(labels) - len(keep)
    if isolated:
        remap = np.full(len(labels), -1, dtype=np.int64)
        remap[keep] = np.arange(len(keep))
        pairs = remap[pairs]
        labels = [labels[i] for i in keep]
    n = len(labels)
    src = np.concatenate([pairs[:, 0], pairs[:, 1]])
    dst = np.concatenate([pairs[:, 1], pairs[:, 0]])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return Graph(
        indptr=indptr,
        indices=np.ascontiguousarray(dst, dtype=np.int64),
        labels=tuple(labels),
        dropped_self_loops=loops,
        dropped_duplicate_edges=dups,
        dropped_isolated_nodes=isolated,
    )


def load_edge_list(text: str | TextIO | Iterable[str], options: ParseOptions | None = None) -> Graph:
    """Parse a whitespace- or comma-separated edge list."""
    options = options or ParseOptions()
    if isinstance(text, str):
        text = text.splitlines()
    pairs = []
    for lineno, line in enumerate(text, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(options.comment_prefixes):
            continue
        tokens = [tok for tok in _SPLIT.split(stripped) if tok]
        if len(tokens) != 2 and not (options.allow_extra_columns and len(tokens) > 2):
            raise ParseError(lineno, line)
        pairs.append((tokens[0], tokens[1]))
    return from_edges(pairs)


def read_graph(path, options: ParseOptions | None = None) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh, options)


def to_edge_list(g: Graph, labels: bool = False) -> str:
    """Canonical form: one ``u v`` line per edge, ``u < v`` in internal id order."""
    if labels:
        lines = [f"{g.labels[u]} {g.labels[v]}" for u, v in g.edges()]
    else:
        lines = [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def lambda_value(g: Graph) -> int:
    """Largest degree difference across an edge."""
    deg = g.degree
    src = np.repeat(np.arange(g.n), deg)
    return int(np.abs(deg[src] - deg[g.indices]).max())


def girth(g: Graph) -> float | int:
    """Exact girth by a breadth-first sweep from every root; ``INFINITE`` for forests."""
    value = kernels.girth(g.indptr, g.indices)
    return INFINITE if value < 0 else int(value)


@dataclass(frozen=True)
class GraphStats:
    n: int
    edge_count: int
    k_max: int
    avg_degree: Fraction
    lam: int
    girth: float | int | None
    dropped_self_loops: int
    dropped_duplicate_edges: int
    dropped_isolated_nodes: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "edges": self.edge_count,
            "k_max": self.k_max,
            "avg_degree": round(float(self.avg_degree), 4),
            "lambda": self.lam,
            "girth": None if self.girth is None else ("inf" if self.girth == INFINITE else self.girth),
            "dropped_self_loops": self.dropped_self_loops,
            "dropped_duplicate_edges": self.dropped_duplicate_edges,
            "dropped_isolated_nodes": self.dropped_isolated_nodes,
        }


def stats(g: Graph, with_girth: bool = True) -> GraphStats:
    return GraphStats(
        n=g.n,
        edge_count=g.edge_count,
        k_max=int(g.degree.max()),
        avg_degree=Fraction(2 * g.edge_count, g.n),
        lam=lambda_value(g),
        girth=girth(g) if with_girth else None,
        dropped_self_loops=g.dropped_self_loops,
        dropped_duplicate_edges=g.dropped_duplicate_edges,
        dropped_isolated_nodes=g.dropped_isolated_nodes,
    )
