"""Relaying a message along a simple path using only local decisions.

Two implementations exist. The functions :func:`relay_start`,
:func:`relay_containing` and the baselines are the readable reference: every
decision goes through a :class:`LocalView` that refuses to reveal anything
beyond the current node's neighborhood. :func:`walk` runs the same decision
rule inside the compiled kernel and is what the benchmark uses. Given the
same uniform draws both produce the same path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .bounds import end_terms
from .chain import CoreSpectrum
from .graph import Graph

ALGORITHMS = {
    "chainrank": kernels.CHAINRANK,
    "zerocore": kernels.ZEROCORE,
    "random": kernels.RANDOM,
    "maxdeg": kernels.MAXDEG,
}
T_CHOICES = {
    "largest-t": kernels.LARGEST_T,
    "smallest-t": kernels.SMALLEST_T,
    "uniform-random": kernels.UNIFORM_T,
}


class LocalityError(LookupError):
    """A relay decision asked about a node outside the current neighborhood."""


@dataclass(frozen=True)
class RelayPath:
    nodes: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    def is_simple_path(self, g: Graph) -> bool:
        if len(set(self.nodes)) != len(self.nodes):
            return False
        return all(b in g.neighbors(a) for a, b in zip(self.nodes, self.nodes[1:]))


@dataclass(frozen=True)
class TiePolicy:
    t_choice: str = "smallest-t"
    seed: int | np.random.SeedSequence | None = None

    def __post_init__(self):
        if self.t_choice not in T_CHOICES:
            raise ValueError(f"unknown t choice {self.t_choice!r}; choose from {sorted(T_CHOICES)}")

    def draws(self, n: int) -> np.ndarray:
        return tie_draws(np.random.default_rng(self.seed), n)


def tie_draws(rng: np.random.Generator, n: int) -> np.ndarray:
    """Uniforms consumed by a walk: row 0 breaks ties among t, row 1 among neighbors."""
    return rng.random((2, n))


def _pick(candidates, u: float):
    return candidates[min(int(u * len(candidates)), len(candidates) - 1)]


class LocalView:
    """What node ``w`` may know when choosing the next hop."""

    def __init__(self, g: Graph, spectrum: CoreSpectrum | None, w: int, used):
        self._g = g
        self._spectrum = spectrum
        self._used = used
        self.node = w
        self._nbrs = frozenset(g.neighbors(w).tolist())

    def _check(self, u: int) -> None:
        if u not in self._nbrs:
            raise LocalityError(f"node {self.node} cannot inspect non-neighbor {u}")

    def neighbors(self) -> list[int]:
        return sorted(self._nbrs)

    def own_ranks(self) -> np.ndarray:
        return self._spectrum.column(self.node)

    def rank(self, u: int, t: int) -> int:
        self._check(u)
        return int(self._spectrum.row(t)[u])

    def degree(self, u: int) -> int:
        self._check(u)
        return int(self._g.degree[u])

    def used(self, u: int) -> bool:
        self._check(u)
        return u in self._used


def _choose_t(view: LocalView, lam: int, x: int, girth_used: int, t_choice: str, u: float) -> int:
    terms = end_terms(view.own_ranks(), lam, x, girth_used)
    best = max(terms)
    a_end = [idx - lam for idx, val in enumerate(terms) if val == best]
    if t_choice == "largest-t":
        return a_end[-1]
    if t_choice == "smallest-t":
        return a_end[0]
    return _pick(a_end, u)


def _grow(g, spectrum, v, algo, girth_used, t_choice, draws, used, x_offset=0) -> list[int]:
    # Algorithm 1: ``used`` plays the role of W; the current node joins it
    # only once the next hop is chosen.
    nodes = [v]
    w = v
    step = 0
    while True:
        view = LocalView(g, spectrum, w, used)
        free = [u for u in view.neighbors() if not view.used(u)]
        if not free:
            break
        if algo == "random":
            score = {u: 0 for u in free}
        elif algo == "maxdeg":
            score = {u: view.degree(u) for u in free}
        else:
            if algo == "zerocore":
                t = 0
            else:
                t = _choose_t(view, spectrum.lam, x_offset + step, girth_used, t_choice, draws[0, step])
            score = {u: view.rank(u, t) for u in free}
        top = max(score.values())
        nxt = _pick([u for u in free if score[u] == top], draws[1, step])
        used.add(w)
        w = nxt
        nodes.append(w)
        step += 1
    used.add(w)
    return nodes


def relay_start(g: Graph, spectrum: CoreSpectrum, v: int, girth_used: int = 3,
                policy: TiePolicy | None = None, t_mode: str = "full") -> RelayPath:
    """Greedy relay from ``v``; ``t_mode="zero-only"`` restricts decisions to ``t = 0``."""
    if t_mode not in ("full", "zero-only"):
        raise ValueError(f"t_mode must be 'full' or 'zero-only', got {t_mode!r}")
    policy = policy or TiePolicy()
    algo = "chainrank" if t_mode == "full" else "zerocore"
    return RelayPath(tuple(_grow(g, spectrum, v, algo, girth_used, policy.t_choice,
                                 policy.draws(g.n), set())))


def relay_containing(g: Graph, spectrum: CoreSpectrum, v: int, girth_used: int = 3,
                     policy: TiePolicy | None = None) -> RelayPath:
    """Two arms grown from ``v`` joined into one path through ``v``.

    The second arm starts with every first-arm node already used and with
    its step counter offset by the first arm's length.
    """
    policy = policy or TiePolicy()
    rng = np.random.default_rng(policy.seed)
    used: set[int] = set()
    arm1 = _grow(g, spectrum, v, "chainrank", girth_used, policy.t_choice, tie_draws(rng, g.n), used)
    arm2 = _grow(g, spectrum, v, "chainrank", girth_used, policy.t_choice, tie_draws(rng, g.n),
                 used, x_offset=len(arm1) - 1)
    return RelayPath(tuple(arm2[:0:-1] + arm1))


def baseline_random(g: Graph, v: int, rng: np.random.Generator) -> RelayPath:
    return RelayPath(tuple(_grow(g, None, v, "random", 3, "largest-t", tie_draws(rng, g.n), set())))


def baseline_maxdeg(g: Graph, v: int, rng: np.random.Generator) -> RelayPath:
    return RelayPath(tuple(_grow(g, None, v, "maxdeg", 3, "largest-t", tie_draws(rng, g.n), set())))


class Walker:
    """Kernel-backed relays over one graph; reuses buffers across calls."""

    def __init__(self, g: Graph, spectrum: CoreSpectrum | None, girth_used: int = 3,
                 t_choice: str = "smallest-t"):
        self.g = g
        self.has_spectrum = spectrum is not None
        if spectrum is None:
            self.table, self.lam = np.zeros((1, g.n), dtype=np.int64), 0
        else:
            self.table, self.lam = np.ascontiguousarray(spectrum.table, dtype=np.int64), spectrum.lam
        self.girth_used = int(girth_used)
        self.t_code = T_CHOICES[t_choice]
        self.degree = np.ascontiguousarray(g.degree, dtype=np.int64)
        self._visited = np.zeros(g.n, dtype=np.bool_)
        self._path = np.empty(g.n, dtype=np.int64)

    def walk(self, v: int, algo: str, draws: np.ndarray, used=None, x_offset: int = 0) -> np.ndarray:
        code = ALGORITHMS[algo]
        if code in (kernels.CHAINRANK, kernels.ZEROCORE) and not self.has_spectrum:
            raise ValueError("spectrum required for chain-based relays")
        self._visited[:] = False
        if used is not None:
            self._visited[list(used)] = True
        count = kernels.relay_walk(self.g.indptr, self.g.indices, self.degree, self.table, self.lam,
                                   self.girth_used, int(v), code, self.t_code, int(x_offset),
                                   draws, self._visited, self._path)
        return self._path[:count].copy()


def walk(g: Graph, spectrum: CoreSpectrum | None, v: int, algo: str, draws: np.ndarray,
         girth_used: int = 3, t_choice: str = "smallest-t") -> RelayPath:
    """One kernel relay; see :class:`Walker` for repeated use."""
    nodes = Walker(g, spectrum, girth_used, t_choice).walk(v, algo, draws)
    return RelayPath(tuple(int(u) for u in nodes))
