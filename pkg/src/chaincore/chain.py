"""Maximal [t,p]-separate chains as fixed points of a node-local dynamical system.

Ranks are plain ``int64`` numpy vectors indexed by node id. The chain they
encode is ``G_i = {v : rank[v] >= i}``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graph import Graph, lambda_value

log = logging.getLogger(__name__)

POLICIES = ("round-robin", "random-permutation", "worklist")


class FeasibilityError(ValueError):
    """Some node has ``p_v > deg(v)``, so no separate chain exists."""

    def __init__(self, nodes):
        self.nodes = list(nodes)
        shown = ", ".join(map(str, self.nodes[:10]))
        more = "" if len(self.nodes) <= 10 else f" (+{len(self.nodes) - 10} more)"
        super().__init__(f"infeasible parameters: p_v > deg(v) at nodes {shown}{more}")


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class ParamVectors:
    t: np.ndarray
    p: np.ndarray

    @classmethod
    def constant(cls, g: Graph, t: int, p: int | None = None) -> ParamVectors:
        """Constant ``t``; ``p=None`` means the degenerate ``p_v = -deg(v)``."""
        tv = np.full(g.n, t, dtype=np.int64)
        pv = -g.degree.astype(np.int64) if p is None else np.full(g.n, p, dtype=np.int64)
        return cls(tv, pv)

    def check(self, g: Graph) -> None:
        if self.t.shape != (g.n,) or self.p.shape != (g.n,):
            raise ValueError(f"parameter vectors must have length {g.n}")
        bad = np.flatnonzero(self.p > g.degree)
        if bad.size:
            raise FeasibilityError(bad.tolist())


@dataclass(frozen=True)
class Schedule:
    policy: str = "round-robin"
    seed: int | None = None

    def __post_init__(self):
        if self.policy not in POLICIES:
            raise ValueError(f"unknown schedule policy {self.policy!r}; choose from {POLICIES}")


@dataclass
class FixedPointStats:
    decrements: int = 0
    increments: int = 0
    sweeps: int = 0
    evaluations: int = 0

    def add(self, other: FixedPointStats) -> None:
        self.decrements += other.decrements
        self.increments += other.increments
        self.sweeps += other.sweeps
        self.evaluations += other.evaluations

    def sidecar(self) -> dict:
        return {"decrements": self.decrements, "sweeps": self.sweeps}


@dataclass
class CoreSpectrum:
    """``table[t + lam]`` is the rank vector ``C_t`` for ``t`` in ``[-lam, 0]``."""

    lam: int
    table: np.ndarray
    stats: FixedPointStats = field(default_factory=FixedPointStats)

    @property
    def ts(self) -> range:
        return range(-self.lam, 1)

    def row(self, t: int) -> np.ndarray:
        if not -self.lam <= t <= 0:
            raise ValueError(f"t={t} outside [-{self.lam}, 0]")
        return self.table[t + self.lam]

    def column(self, v: int) -> np.ndarray:
        return self.table[:, v]


def _as_state(values, n: int) -> np.ndarray:
    state = np.array(values, dtype=np.int64)
    if state.shape != (n,):
        raise ValueError(f"state must have length {n}")
    return state


def local_update(g: Graph, v: int, state, t_v: int, p_v: int) -> int:
    """Largest ``k`` with at least ``k`` neighbors valued ``>= k + t_v`` and
    at least ``max(0, k + p_v)`` neighbors valued ``>= k``."""
    state = np.asarray(state, dtype=np.int64)
    return int(kernels.local_update(g.indptr, g.indices, state, int(v), int(t_v), int(p_v)))


def fixed_point(
    g: Graph,
    params: ParamVectors,
    init,
    schedule: Schedule | None = None,
    stats: FixedPointStats | None = None,
) -> np.ndarray:
    """Iterate the local rule from ``init`` until a full pass changes nothing."""
    params.check(g)
    schedule = schedule or Schedule()
    state = _as_state(init, g.n)
    if (state > g.degree).any() or (state < 0).any():
        raise ValueError("initial state must satisfy 0 <= state <= degree")
    t = np.ascontiguousarray(params.t, dtype=np.int64)
    p = np.ascontiguousarray(params.p, dtype=np.int64)
    hist = np.empty(int(g.degree.max()) + max(int(t.max()), 0) + 2, dtype=np.int64)
    budget = int(g.degree.sum()) + g.n
    run = FixedPointStats()

    def account(dec, inc):
        run.decrements += int(dec)
        run.increments += int(inc)
        if run.decrements + run.increments > budget:
            raise ConvergenceError(
                f"state moved {run.decrements + run.increments} units, above the bound {budget}"
            )

    if schedule.policy == "worklist":
        evals, dec, inc, finished = kernels.worklist_run(g.indptr, g.indices, state, t, p, hist, budget)
        run.evaluations += int(evals)
        account(dec, inc)
        if not finished:
            raise ConvergenceError("worklist schedule exceeded its movement budget")

    rng = np.random.default_rng(schedule.seed)
    order = np.arange(g.n, dtype=np.int64)
    while True:
        if schedule.policy == "random-permutation":
            order = rng.permutation(g.n).astype(np.int64)
        changed, dec, inc = kernels.sweep_once(g.indptr, g.indices, state, t, p, order, hist)
        run.sweeps += 1
        run.evaluations += g.n
        account(dec, inc)
        if changed == 0:
            break
    if stats is not None:
        stats.add(run)
    log.debug("fixed point after %d sweeps, %d decrements", run.sweeps, run.decrements)
    return state


def decompose(g: Graph, params: ParamVectors, schedule: Schedule | None = None,
              stats: FixedPointStats | None = None) -> np.ndarray:
    return fixed_point(g, params, g.degree, schedule, stats)


def spectrum(g: Graph, schedule: Schedule | None = None) -> CoreSpectrum:
    """All rows ``C_t`` for ``t = -lambda(G) .. 0``, each warm-started from the previous one."""
    lam = lambda_value(g)
    table = np.empty((lam + 1, g.n), dtype=np.int64)
    stats = FixedPointStats()
    state = g.degree.astype(np.int64)
    for row, t in enumerate(range(-lam, 1)):
        state = fixed_point(g, ParamVectors.constant(g, t), state, schedule, stats)
        table[row] = state
    table.setflags(write=False)
    return CoreSpectrum(lam=lam, table=table, stats=stats)


def verify_chain(g: Graph, params: ParamVectors, ranks) -> bool:
    """Check that the level sets of ``ranks`` form a [t,p]-separate chain."""
    params.check(g)
    ranks = _as_state(ranks, g.n)
    if (ranks < 0).any():
        raise ValueError("ranks must be nonnegative")
    src = np.repeat(np.arange(g.n), g.degree)
    nbr_rank = ranks[g.indices]
    for i in range(int(ranks.max()) + 1):
        members = ranks >= i
        inside = np.bincount(src, weights=nbr_rank >= i, minlength=g.n)
        if (inside[members] < np.maximum(0, i + params.p[members])).any():
            return False
        level = np.maximum(0, i + params.t)
        reach = np.bincount(src, weights=nbr_rank >= level[src], minlength=g.n)
        if (reach[members] < i).any():
            return False
    return True
