"""Longest-path lower bounds read off a core spectrum.

For ``t <= -1`` a rank value ``z`` is split as ``z = r + |t| q`` and the
bounds are integer expressions in ``q``, ``r`` and the girth ``g``. The
``t = 0`` terms have their own closed forms and never go through
:func:`j_value` (it divides by ``|t|``).

Scalar functions (``bound_le`` and friends) work one node at a time;
:func:`path_bounds` evaluates the whole graph with numpy and must agree
with them exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import CoreSpectrum
from .graph import INFINITE, Graph, girth as exact_girth


@dataclass(frozen=True)
class Anatomy:
    q: int
    r: int
    xi: int


def anatomy(z: int, t: int) -> Anatomy:
    """Quotient, remainder and ``xi`` (least ``y >= 0`` with ``r + |t| y >= 2``)."""
    if t >= 0:
        raise ValueError("anatomy is defined for t <= -1 only")
    if z < 0:
        raise ValueError("z must be nonnegative")
    a = -t
    q, r = divmod(z, a)
    xi = 0 if r >= 2 else -((r - 2) // a)
    return Anatomy(q, r, xi)


def pi_value(z: int, t: int, j: int) -> int:
    return z % -t - t * j


def j_value(z: int, x: int, t: int, g: int) -> int:
    a = -t
    q, r = divmod(z, a)
    return min(q, max(-1, (q + x - 1 - (g - 2) * (r - 1)) // (1 + a * (g - 2))))


def resolve_girth(graph: Graph, mode="3") -> tuple[int, float | int | None]:
    """Map a girth mode (``"exact"``, ``"3"`` or an integer) to the ``g`` used.

    Returns ``(g_used, exact)`` where ``exact`` is the true girth when it
    had to be computed.
    """
    mode = str(mode).strip().lower()
    if mode == "exact":
        ex = exact_girth(graph)
        return (3 if ex == INFINITE else int(ex)), ex
    try:
        g = int(mode)
    except ValueError:
        raise ValueError(f"girth must be 'exact', '3' or an integer, got {mode!r}") from None
    if g < 3:
        raise ValueError("girth must be at least 3")
    if g == 3:
        return 3, None
    ex = exact_girth(graph)
    if g > ex:
        raise ValueError(f"girth {g} exceeds the graph's true girth {ex}")
    return g, ex


@dataclass(frozen=True)
class BoundContext:
    spectrum: CoreSpectrum
    g: int = 3
    exact_girth: float | int | None = None

    def __post_init__(self):
        if self.g < 3:
            raise ValueError("girth must be at least 3")
        if self.exact_girth is not None and self.exact_girth != INFINITE and self.g > self.exact_girth:
            raise ValueError(f"girth {self.g} exceeds the true girth {self.exact_girth}")

    @property
    def lam(self) -> int:
        return self.spectrum.lam

    def rank(self, v: int, t: int) -> int:
        return int(self.spectrum.table[t + self.spectrum.lam, v])


def _le_term(z: int, t: int, g: int) -> int:
    if t == 0:
        return (g - 2) * (z - 1) + 1
    return z // -t - j_value(z, 0, t, g)


def _lm_term(z: int, t: int, g: int) -> int:
    if t == 0:
        return (g - 2) * (z - 1) + 1
    q = z // -t
    j = j_value(z, 0, t, g)
    return 2 * q - j - j_value(z, q - j, t, g)


def _le_hat_term(z: int, t: int, g: int) -> int | None:
    an = anatomy(z, t)
    q = an.q
    j = j_value(z, 0, t, g)
    if j - an.xi < 0:
        return None
    inner = math.inf
    for k in range(j - an.xi + 1):
        x = q - j + k - (g - 2) * (pi_value(z, t, j - k) - 1)
        z_inner = max(0, pi_value(z, t, q - x + 1))
        inner = min(inner, k - x - j_value(z_inner, q - j + k, t, g))
    return 2 * q - j + inner


def _argmax(terms: dict[int, int]) -> tuple[int, int]:
    best = max(terms.values())
    return best, max(t for t, val in terms.items() if val == best)


def bound_le(ctx: BoundContext, v: int) -> int:
    """Guaranteed length of some path that ends at ``v``."""
    return _argmax({t: _le_term(ctx.rank(v, t), t, ctx.g) for t in ctx.spectrum.ts})[0]


def bound_lm(ctx: BoundContext, v: int) -> int:
    """Guaranteed length of some path passing through ``v``."""
    return _argmax({t: _lm_term(ctx.rank(v, t), t, ctx.g) for t in ctx.spectrum.ts})[0]


def bound_le_hat(ctx: BoundContext, v: int) -> int | None:
    """Refined end-point bound; ``None`` when no ``t`` in ``[-lam, -1]`` applies."""
    terms = {}
    for t in range(-ctx.lam, 0):
        term = _le_hat_term(ctx.rank(v, t), t, ctx.g)
        if term is not None:
            terms[t] = term
    return _argmax(terms)[0] if terms else None


def end_terms(ranks_by_t, lam: int, x: int, g: int) -> list[int]:
    """Remaining-extension terms for ``t = -lam .. 0`` given one node's ranks.

    ``ranks_by_t[i]`` is the node's rank at ``t = i - lam``. Only the node's
    own data is read, which is what lets relays decide locally.
    """
    out = []
    for idx, t in enumerate(range(-lam, 1)):
        z = int(ranks_by_t[idx])
        if t == 0:
            term = z - x
        else:
            term = z // -t - j_value(z, x, t, g)
        out.append(max(term, 0))
    return out


def l_end(ctx: BoundContext, v: int, x: int) -> int:
    return max(end_terms(ctx.spectrum.column(v), ctx.lam, x, ctx.g))


def a_end(ctx: BoundContext, v: int, x: int) -> set[int]:
    """Every ``t`` whose term attains :func:`l_end`."""
    terms = end_terms(ctx.spectrum.column(v), ctx.lam, x, ctx.g)
    best = max(terms)
    return {idx - ctx.lam for idx, val in enumerate(terms) if val == best}


@dataclass(frozen=True)
class ClassicalBounds:
    erdos_gallai: int
    min_degree: int


def classical_bounds(graph: Graph) -> ClassicalBounds:
    # largest k with m > n (k - 1) / 2, i.e. k = ceil(2m / n)
    k = -(-2 * graph.edge_count // graph.n)
    return ClassicalBounds(erdos_gallai=int(k), min_degree=int(graph.degree.min()))


@dataclass
class PathBoundSet:
    """Per-node bounds; ``argmax_*`` hold the largest ``t`` attaining each maximum.

    ``le_hat`` is only meaningful where ``has_le_hat`` is set.
    """

    le: np.ndarray
    lm: np.ndarray
    le_hat: np.ndarray
    has_le_hat: np.ndarray
    argmax_le: np.ndarray
    argmax_lm: np.ndarray
    argmax_le_hat: np.ndarray
    g: int

    def le_hat_or_none(self, v: int) -> int | None:
        return int(self.le_hat[v]) if self.has_le_hat[v] else None


def _jv(z, x, a, g):
    q = z // a
    r = z - a * q
    return np.minimum(q, np.maximum(-1, (q + x - 1 - (g - 2) * (r - 1)) // (1 + a * (g - 2))))


def path_bounds(ctx: BoundContext) -> PathBoundSet:
    """Vectorized L_e, L_m and refined L_e for every node."""
    spec, g = ctx.spectrum, ctx.g
    z0 = spec.row(0).astype(np.int64)
    n = z0.shape[0]
    le = (g - 2) * (z0 - 1) + 1
    lm = le.copy()
    arg_le = np.zeros(n, dtype=np.int64)
    arg_lm = np.zeros(n, dtype=np.int64)
    hat = np.zeros(n, dtype=np.int64)
    has_hat = np.zeros(n, dtype=bool)
    arg_hat = np.zeros(n, dtype=np.int64)
    big = np.iinfo(np.int64).max
    # descending t with strict improvement keeps the largest attaining t
    for t in range(-1, -spec.lam - 1, -1):
        a = -t
        z = spec.row(t).astype(np.int64)
        q = z // a
        r = z - a * q
        j = _jv(z, 0, a, g)
        term = q - j
        upd = term > le
        le = np.where(upd, term, le)
        arg_le = np.where(upd, t, arg_le)
        term = 2 * q - j - _jv(z, q - j, a, g)
        upd = term > lm
        lm = np.where(upd, term, lm)
        arg_lm = np.where(upd, t, arg_lm)

        xi = np.where(r >= 2, 0, -((r - 2) // a))
        span = j - xi
        alive = span >= 0
        if not alive.any():
            continue
        inner = np.full(n, big, dtype=np.int64)
        for k in range(int(span[alive].max()) + 1):
            act = alive & (k <= span)
            x = q - j + k - (g - 2) * (r + a * (j - k) - 1)
            z_in = np.maximum(0, r + a * (q - x + 1))
            val = k - x - _jv(z_in, q - j + k, a, g)
            inner = np.where(act, np.minimum(inner, val), inner)
        term = 2 * q - j + inner
        upd = alive & (~has_hat | (term > hat))
        hat = np.where(upd, term, hat)
        arg_hat = np.where(upd, t, arg_hat)
        has_hat |= alive
    return PathBoundSet(le=le, lm=lm, le_hat=hat, has_le_hat=has_hat, argmax_le=arg_le,
                        argmax_lm=arg_lm, argmax_le_hat=arg_hat, g=g)
