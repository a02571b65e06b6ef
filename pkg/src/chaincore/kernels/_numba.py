"""Compiled inner loops. Every function here has a twin in ``_numpy``."""

import numpy as np
from numba import njit

_opts = {"cache": True, "nogil": True}

CHAINRANK, ZEROCORE, RANDOM, MAXDEG = 0, 1, 2, 3
LARGEST_T, SMALLEST_T, UNIFORM_T = 0, 1, 2


@njit(**_opts)
def _rank_at(indptr, indices, state, v, tv, pv, hist):
    # hist[x] becomes the number of neighbors whose state is >= x
    a = indptr[v]
    b = indptr[v + 1]
    deg = b - a
    cap = deg + (tv if tv > 0 else 0)
    for x in range(cap + 2):
        hist[x] = 0
    for e in range(a, b):
        s = state[indices[e]]
        if s > cap:
            s = cap
        hist[s] += 1
    for x in range(cap - 1, -1, -1):
        hist[x] += hist[x + 1]
    for k in range(deg, 0, -1):
        thr = k + tv
        c1 = deg if thr <= 0 else hist[thr]
        if c1 < k:
            continue
        need = k + pv
        if need > 0 and hist[k] < need:
            continue
        return k
    return 0


@njit(**_opts)
def local_update(indptr, indices, state, v, tv, pv):
    deg = indptr[v + 1] - indptr[v]
    hist = np.empty(deg + max(tv, 0) + 2, dtype=np.int64)
    return _rank_at(indptr, indices, state, v, tv, pv, hist)


@njit(**_opts)
def sweep_once(indptr, indices, state, t, p, order, hist):
    """One in-place pass over ``order``. Returns (changed, decrements, increments)."""
    changed = 0
    dec = 0
    inc = 0
    for idx in range(order.shape[0]):
        v = order[idx]
        new = _rank_at(indptr, indices, state, v, t[v], p[v], hist)
        old = state[v]
        if new != old:
            changed += 1
            if new < old:
                dec += old - new
            else:
                inc += new - old
            state[v] = new
    return changed, dec, inc


@njit(**_opts)
def worklist_run(indptr, indices, state, t, p, hist, budget):
    """FIFO single-node schedule seeded with every node.

    Returns (evaluations, decrements, increments, finished). ``finished`` is
    False when the total movement exceeded ``budget``.
    """
    n = state.shape[0]
    queue = np.empty(n, dtype=np.int64)
    queued = np.ones(n, dtype=np.bool_)
    for v in range(n):
        queue[v] = v
    head = 0
    size = n
    evals = 0
    dec = 0
    inc = 0
    while size > 0:
        v = queue[head]
        head = (head + 1) % n
        size -= 1
        queued[v] = False
        evals += 1
        new = _rank_at(indptr, indices, state, v, t[v], p[v], hist)
        old = state[v]
        if new == old:
            continue
        if new < old:
            dec += old - new
        else:
            inc += new - old
        state[v] = new
        if dec + inc > budget:
            return evals, dec, inc, False
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if not queued[u]:
                queued[u] = True
                queue[(head + size) % n] = u
                size += 1
    return evals, dec, inc, True


@njit(**_opts)
def girth(indptr, indices):
    n = indptr.shape[0] - 1
    best = n + 1
    dist = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for root in range(n):
        if best == 3:
            break
        head = 0
        tail = 1
        queue[0] = root
        dist[root] = 0
        parent[root] = -1
        while head < tail:
            u = queue[head]
            head += 1
            if 2 * dist[u] + 1 >= best:
                break
            for e in range(indptr[u], indptr[u + 1]):
                x = indices[e]
                if dist[x] < 0:
                    dist[x] = dist[u] + 1
                    parent[x] = u
                    queue[tail] = x
                    tail += 1
                elif x != parent[u]:
                    cyc = dist[u] + dist[x] + 1
                    if cyc < best:
                        best = cyc
        for i in range(tail):
            dist[queue[i]] = -1
    return -1 if best == n + 1 else best


@njit(**_opts)
def _end_term(table, lam, w, row, x, g):
    z = table[row, w]
    if row == lam:
        term = z - x
    else:
        a = lam - row
        q = z // a
        r = z - a * q
        j = (q + x - 1 - (g - 2) * (r - 1)) // (1 + a * (g - 2))
        if j < -1:
            j = -1
        if j > q:
            j = q
        term = q - j
    return term if term > 0 else 0


@njit(**_opts)
def relay_walk(indptr, indices, degree, table, lam, g, start, algo, t_choice, x_offset, draws, visited, path):
    """Grow a path from ``start`` one hop at a time; returns its node count.

    ``visited`` marks nodes already used (mutated), ``draws`` is a (2, n)
    array of uniforms consumed one column per step for tie breaking.
    """
    path[0] = start
    count = 1
    w = start
    step = 0
    while True:
        a = indptr[w]
        b = indptr[w + 1]
        free = 0
        for e in range(a, b):
            if not visited[indices[e]]:
                free += 1
        if free == 0:
            break
        row = lam
        if algo == CHAINRANK:
            x = x_offset + step
            best_term = -1
            n_best = 0
            for rr in range(lam + 1):
                term = _end_term(table, lam, w, rr, x, g)
                if term > best_term:
                    best_term = term
                    n_best = 1
                elif term == best_term:
                    n_best += 1
            if t_choice == UNIFORM_T:
                pick = int(draws[0, step] * n_best)
                if pick >= n_best:
                    pick = n_best - 1
            elif t_choice == SMALLEST_T:
                pick = 0
            else:
                pick = n_best - 1
            seen = 0
            for rr in range(lam + 1):
                if _end_term(table, lam, w, rr, x, g) == best_term:
                    if seen == pick:
                        row = rr
                        break
                    seen += 1
        best = -1
        n_best = 0
        for e in range(a, b):
            u = indices[e]
            if visited[u]:
                continue
            if algo == RANDOM:
                s = 0
            elif algo == MAXDEG:
                s = degree[u]
            else:
                s = table[row, u]
            if s > best:
                best = s
                n_best = 1
            elif s == best:
                n_best += 1
        pick = int(draws[1, step] * n_best)
        if pick >= n_best:
            pick = n_best - 1
        nxt = -1
        seen = 0
        for e in range(a, b):
            u = indices[e]
            if visited[u]:
                continue
            if algo == RANDOM:
                s = 0
            elif algo == MAXDEG:
                s = degree[u]
            else:
                s = table[row, u]
            if s == best:
                if seen == pick:
                    nxt = u
                    break
                seen += 1
        visited[w] = True
        w = nxt
        path[count] = w
        count += 1
        step += 1
    visited[w] = True
    return count


@njit(**_opts)
def longest_paths(indptr, indices):
    """Exact longest simple path lengths per node by subset DP (small n only).

    Returns (ending_at, containing): the longest path with v as a terminal,
    and the longest path through v.
    """
    n = indptr.shape[0] - 1
    full = 1 << n
    reach = np.zeros((full, n), dtype=np.bool_)
    for v in range(n):
        reach[1 << v, v] = True
    ending = np.zeros(n, dtype=np.int64)
    containing = np.zeros(n, dtype=np.int64)
    for mask in range(1, full):
        pc = 0
        m = mask
        while m:
            m &= m - 1
            pc += 1
        any_end = False
        for e in range(n):
            if not reach[mask, e]:
                continue
            any_end = True
            if pc - 1 > ending[e]:
                ending[e] = pc - 1
            for k in range(indptr[e], indptr[e + 1]):
                u = indices[k]
                if not (mask >> u) & 1:
                    reach[mask | (1 << u), u] = True
        if any_end:
            for v in range(n):
                if (mask >> v) & 1 and pc - 1 > containing[v]:
                    containing[v] = pc - 1
    return ending, containing
