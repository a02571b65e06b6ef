"""Pure numpy/CPython versions of the compiled kernels.

Same signatures and results as ``_numba``; the per-node work is vectorized
where the loop structure allows it, so these stay usable on mid-sized graphs.
"""

from collections import deque

import numpy as np

CHAINRANK, ZEROCORE, RANDOM, MAXDEG = 0, 1, 2, 3
LARGEST_T, SMALLEST_T, UNIFORM_T = 0, 1, 2


def local_update(indptr, indices, state, v, tv, pv):
    vals = np.sort(state[indices[indptr[v]:indptr[v + 1]]])
    deg = vals.shape[0]
    if deg == 0:
        return 0
    k = np.arange(1, deg + 1)
    # vals ascending: the k-th largest value is vals[deg - k]
    cond = vals[deg - k] >= k + tv
    at_least_k = deg - np.searchsorted(vals, k, side="left")
    cond &= at_least_k >= np.maximum(0, k + pv)
    hits = np.flatnonzero(cond)
    return int(hits[-1] + 1) if hits.size else 0


def sweep_once(indptr, indices, state, t, p, order, hist=None):
    changed = dec = inc = 0
    for v in order:
        new = local_update(indptr, indices, state, v, t[v], p[v])
        old = int(state[v])
        if new != old:
            changed += 1
            if new < old:
                dec += old - new
            else:
                inc += new - old
            state[v] = new
    return changed, dec, inc


def worklist_run(indptr, indices, state, t, p, hist, budget):
    n = state.shape[0]
    queue = deque(range(n))
    queued = np.ones(n, dtype=bool)
    evals = dec = inc = 0
    while queue:
        v = queue.popleft()
        queued[v] = False
        evals += 1
        new = local_update(indptr, indices, state, v, t[v], p[v])
        old = int(state[v])
        if new == old:
            continue
        if new < old:
            dec += old - new
        else:
            inc += new - old
        state[v] = new
        if dec + inc > budget:
            return evals, dec, inc, False
        nbrs = indices[indptr[v]:indptr[v + 1]]
        fresh = nbrs[~queued[nbrs]]
        queued[fresh] = True
        queue.extend(fresh.tolist())
    return evals, dec, inc, True


def girth(indptr, indices):
    n = indptr.shape[0] - 1
    adj = [indices[indptr[v]:indptr[v + 1]].tolist() for v in range(n)]
    best = n + 1
    for root in range(n):
        if best == 3:
            break
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for x in adj[u]:
                if x not in dist:
                    dist[x] = dist[u] + 1
                    parent[x] = u
                    queue.append(x)
                elif x != parent[u]:
                    best = min(best, dist[u] + dist[x] + 1)
    return -1 if best == n + 1 else best


def _end_terms(table, lam, w, x, g):
    z = table[:, w].astype(np.int64)
    a = lam - np.arange(lam + 1)
    terms = np.empty(lam + 1, dtype=np.int64)
    terms[lam] = z[lam] - x
    if lam:
        a_neg = a[:lam]
        q = z[:lam] // a_neg
        r = z[:lam] - a_neg * q
        j = (q + x - 1 - (g - 2) * (r - 1)) // (1 + a_neg * (g - 2))
        j = np.minimum(q, np.maximum(-1, j))
        terms[:lam] = q - j
    return np.maximum(terms, 0)


def relay_walk(indptr, indices, degree, table, lam, g, start, algo, t_choice, x_offset, draws, visited, path):
    path[0] = start
    count = 1
    w = start
    step = 0
    while True:
        nbrs = indices[indptr[w]:indptr[w + 1]]
        free = nbrs[~visited[nbrs]]
        if free.size == 0:
            break
        row = lam
        if algo == CHAINRANK:
            terms = _end_terms(table, lam, w, x_offset + step, g)
            rows = np.flatnonzero(terms == terms.max())
            if t_choice == UNIFORM_T:
                row = rows[min(int(draws[0, step] * rows.size), rows.size - 1)]
            elif t_choice == SMALLEST_T:
                row = rows[0]
            else:
                row = rows[-1]
        if algo == RANDOM:
            score = np.zeros(free.size, dtype=np.int64)
        elif algo == MAXDEG:
            score = degree[free]
        else:
            score = table[row, free]
        tied = free[score == score.max()]
        nxt = tied[min(int(draws[1, step] * tied.size), tied.size - 1)]
        visited[w] = True
        w = int(nxt)
        path[count] = w
        count += 1
        step += 1
    visited[w] = True
    return count


def longest_paths(indptr, indices):
    n = indptr.shape[0] - 1
    full = 1 << n
    reach = np.zeros((full, n), dtype=bool)
    reach[1 << np.arange(n), np.arange(n)] = True
    src = np.repeat(np.arange(n), np.diff(indptr))
    dst = np.asarray(indices)
    masks = np.arange(full)
    popcount = np.zeros(full, dtype=np.int64)
    for b in range(n):
        popcount += (masks >> b) & 1
    # masks only grow, so processing by popcount layer is a valid order
    for size in range(1, n):
        layer = masks[popcount == size]
        for e, u in zip(src, dst):
            m = layer[reach[layer, e] & ((layer >> u) & 1 == 0)]
            reach[m | (1 << u), u] = True
    length = popcount - 1
    ending = np.where(reach, length[:, None], 0).max(axis=0)
    alive = reach.any(axis=1)
    member = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
    containing = np.where(member & alive[:, None], length[:, None], 0).max(axis=0)
    return ending.astype(np.int64), containing.astype(np.int64)
