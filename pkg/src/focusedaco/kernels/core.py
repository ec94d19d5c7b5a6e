"""Hot numeric kernels: distances, tour construction, relocation, 2-opt.

Single source for both backends: every function here is compiled with
numba when the numba backend is active and runs as plain python/numpy
otherwise. Kernels operate on raw arrays; the package modules wrap them
with validated, documented APIs.

Conventions:
  coords    (n, 2) float64 node coordinates
  rounded   bool, True for nearest-integer euclidean distances
  order     (n,) int64 visiting order (a permutation)
  pos       (n,) int64 inverse of order: pos[order[t]] = t
  cand      (n, k) int64 candidate lists, ascending distance
  backup    (n, b) int64 backup lists (ranks k+1..k+b)
  weights   (n, k) float64 sampling weights tau^alpha * H^beta
  state     (1,) uint64 splitmix64 stream state
"""

import numpy as np

from ._dispatch import jit, pjit, prange, rng_u01

EPS_IMPROVE = 1e-10


@jit
def rng_randint(state, m):
    # uniform integer in [0, m) from one u01 draw
    r = int(rng_u01(state) * m)
    if r >= m:
        r = m - 1
    return r


@jit
def dist(coords, rounded, i, j):
    dx = coords[i, 0] - coords[j, 0]
    dy = coords[i, 1] - coords[j, 1]
    d = (dx * dx + dy * dy) ** 0.5
    if rounded:
        d = float(int(d + 0.5))
    return d


@jit
def tour_cost(coords, rounded, order):
    n = order.shape[0]
    total = 0.0
    for t in range(n - 1):
        total += dist(coords, rounded, order[t], order[t + 1])
    total += dist(coords, rounded, order[n - 1], order[0])
    return total


@jit
def fill_positions(order, pos):
    for t in range(order.shape[0]):
        pos[order[t]] = t


@jit
def nn_tour(coords, rounded, cand, backup, start, order):
    """Greedy nearest-neighbor tour from `start`, written into `order`."""
    n = coords.shape[0]
    visited = np.zeros(n, dtype=np.uint8)
    order[0] = start
    visited[start] = 1
    for t in range(1, n):
        prev = order[t - 1]
        nxt = -1
        for r in range(cand.shape[1]):
            c = cand[prev, r]
            if visited[c] == 0:
                nxt = c
                break
        if nxt < 0:
            for r in range(backup.shape[1]):
                c = backup[prev, r]
                if visited[c] == 0:
                    nxt = c
                    break
        if nxt < 0:
            best_d = np.inf
            for node in range(n):
                if visited[node] == 0:
                    d = dist(coords, rounded, prev, node)
                    if d < best_d:
                        best_d = d
                        nxt = node
        order[t] = nxt
        visited[nxt] = 1


@jit
def select_next(cur, visited, weights, cand, backup, coords, rounded, state):
    """Next node from `cur`: candidate roulette, then backup, then full scan.

    Returns -1 when every node is visited. The roulette consumes exactly
    one stream draw; the deterministic fallbacks consume none.
    """
    n = coords.shape[0]
    k = cand.shape[1]
    m = 0
    total = 0.0
    picks = np.empty(k, dtype=np.int64)
    ws = np.empty(k, dtype=np.float64)
    for r in range(k):
        c = cand[cur, r]
        if visited[c] == 0:
            w = weights[cur, r]
            picks[m] = c
            ws[m] = w
            total += w
            m += 1
    if m > 0:
        rr = rng_u01(state) * total
        acc = 0.0
        for t in range(m):
            acc += ws[t]
            if rr < acc:
                return picks[t]
        return picks[m - 1]
    for r in range(backup.shape[1]):
        c = backup[cur, r]
        if visited[c] == 0:
            return c
    best = -1
    best_d = np.inf
    for node in range(n):
        if node != cur and visited[node] == 0:
            d = dist(coords, rounded, cur, node)
            if d < best_d:
                best_d = d
                best = node
    return best


@jit
def select_next_counts(draws, cur, visited, weights, cand, backup, coords, rounded, state, counts):
    # repeated-draw histogram, used by the sampling-distribution tests
    for _ in range(draws):
        c = select_next(cur, visited, weights, cand, backup, coords, rounded, state)
        counts[c] += 1


@jit
def relocation_delta(coords, rounded, order, pos, u, v):
    """Cost change of removing v and reinserting it right after u.

    Six incident edges change: (pred(v),v), (v,succ(v)), (u,succ(u)) leave
    the tour; (pred(v),succ(v)), (u,v), (v,succ(u)) enter it. Callers must
    exclude u == v and v == succ(u).
    """
    n = order.shape[0]
    pv = pos[v]
    pu = pos[u]
    p = order[(pv - 1) % n]
    s = order[(pv + 1) % n]
    su = order[(pu + 1) % n]
    return (
        dist(coords, rounded, p, s)
        + dist(coords, rounded, u, v)
        + dist(coords, rounded, v, su)
        - dist(coords, rounded, p, v)
        - dist(coords, rounded, v, s)
        - dist(coords, rounded, u, su)
    )


@jit
def apply_relocation(order, pos, u, v):
    """Shift v out of its slot and reinsert it immediately after u."""
    pv = pos[v]
    pu = pos[u]
    if pu < pv:
        for i in range(pv, pu + 1, -1):
            order[i] = order[i - 1]
            pos[order[i]] = i
        order[pu + 1] = v
        pos[v] = pu + 1
    else:
        for i in range(pv, pu):
            order[i] = order[i + 1]
            pos[order[i]] = i
        order[pu] = v
        pos[v] = pu


@jit
def _is_ref_edge(ref_order, ref_pos, a, b):
    n = ref_order.shape[0]
    pa = ref_pos[a]
    return ref_order[(pa + 1) % n] == b or ref_order[(pa - 1) % n] == b


@jit
def _drop_new_edge(new_u, new_v, n_new, a, b):
    for t in range(n_new):
        if (new_u[t] == a and new_v[t] == b) or (new_u[t] == b and new_v[t] == a):
            new_u[t] = new_u[n_new - 1]
            new_v[t] = new_v[n_new - 1]
            return n_new - 1
    return n_new


@jit
def _add_new_edge(new_u, new_v, n_new, a, b):
    for t in range(n_new):
        if (new_u[t] == a and new_v[t] == b) or (new_u[t] == b and new_v[t] == a):
            return n_new
    new_u[n_new] = a
    new_v[n_new] = b
    return n_new + 1


@jit
def construct(
    coords,
    rounded,
    ref_order,
    ref_pos,
    weights,
    cand,
    backup,
    mne,
    state,
    order,
    pos,
    new_u,
    new_v,
):
    """Focused construction: copy the reference, relocate sampled nodes
    after the walk head until at least `mne` edges differ from the
    reference, then keep the rest of the reference verbatim.

    `order`/`pos` receive the result; `new_u`/`new_v` (size >= 3n) receive
    the edges of the result that are absent from the reference. Returns
    (cost, count of such edges).
    """
    n = coords.shape[0]
    for t in range(n):
        order[t] = ref_order[t]
        pos[order[t]] = t
    visited = np.zeros(n, dtype=np.uint8)
    cur = rng_randint(state, n)
    visited[cur] = 1
    n_new = 0
    steps = 0
    while n_new < mne and steps < n - 1:
        steps += 1
        v = select_next(cur, visited, weights, cand, backup, coords, rounded, state)
        if v < 0:
            break
        visited[v] = 1
        if order[(pos[cur] + 1) % n] == v:
            cur = v
            continue
        pv = pos[v]
        p = order[(pv - 1) % n]
        s = order[(pv + 1) % n]
        su = order[(pos[cur] + 1) % n]
        # removed edges first so a re-added edge nets out correctly
        if not _is_ref_edge(ref_order, ref_pos, p, v):
            n_new = _drop_new_edge(new_u, new_v, n_new, p, v)
        if not _is_ref_edge(ref_order, ref_pos, v, s):
            n_new = _drop_new_edge(new_u, new_v, n_new, v, s)
        if not _is_ref_edge(ref_order, ref_pos, cur, su):
            n_new = _drop_new_edge(new_u, new_v, n_new, cur, su)
        if not _is_ref_edge(ref_order, ref_pos, p, s):
            n_new = _add_new_edge(new_u, new_v, n_new, p, s)
        if not _is_ref_edge(ref_order, ref_pos, cur, v):
            n_new = _add_new_edge(new_u, new_v, n_new, cur, v)
        if not _is_ref_edge(ref_order, ref_pos, v, su):
            n_new = _add_new_edge(new_u, new_v, n_new, v, su)
        apply_relocation(order, pos, cur, v)
        cur = v
    return tour_cost(coords, rounded, order), n_new


@jit
def delta_two_opt(coords, rounded, order, pos, a, b):
    """Gain of exchanging (a,succ(a)) and (b,succ(b)) for (a,b), (succ(a),succ(b))."""
    n = order.shape[0]
    sa = order[(pos[a] + 1) % n]
    sb = order[(pos[b] + 1) % n]
    return (
        dist(coords, rounded, a, b)
        + dist(coords, rounded, sa, sb)
        - dist(coords, rounded, a, sa)
        - dist(coords, rounded, b, sb)
    )


@jit
def apply_two_opt(order, pos, a, b):
    """Apply the (a,b) exchange by reversing the shorter of the two arcs."""
    n = order.shape[0]
    i = (pos[a] + 1) % n
    j = pos[b]
    inner = (j - i) % n + 1
    if inner <= n - inner:
        lo, hi = i, j
        m = inner
    else:
        lo, hi = (j + 1) % n, pos[a]
        m = n - inner
    for _ in range(m // 2):
        x = order[lo]
        y = order[hi]
        order[lo] = y
        order[hi] = x
        pos[y] = lo
        pos[x] = hi
        lo = (lo + 1) % n
        hi = (hi - 1) % n


@jit
def two_opt(coords, rounded, order, pos, cand, seeds, n_seeds):
    """Queue-driven first-improvement 2-opt over candidate edges.

    Scans each pending node's candidates in ascending-distance order, both
    tour directions; an applied move re-enqueues its four endpoints.
    Returns the final (recomputed) tour cost.
    """
    n = order.shape[0]
    k = cand.shape[1]
    in_q = np.zeros(n, dtype=np.uint8)
    ring = np.empty(n, dtype=np.int64)
    head = 0
    count = 0
    for t in range(n_seeds):
        a = seeds[t]
        if in_q[a] == 0:
            ring[(head + count) % n] = a
            in_q[a] = 1
            count += 1
    while count > 0:
        a = ring[head]
        head = (head + 1) % n
        count -= 1
        in_q[a] = 0
        pa = order[(pos[a] - 1) % n]
        x0 = -1
        x1 = -1
        y0 = -1
        y1 = -1
        for r in range(k):
            b = cand[a, r]
            sa = order[(pos[a] + 1) % n]
            sb = order[(pos[b] + 1) % n]
            if b != sa and sb != a:
                if delta_two_opt(coords, rounded, order, pos, a, b) < -EPS_IMPROVE:
                    apply_two_opt(order, pos, a, b)
                    x0 = a
                    x1 = sa
                    y0 = b
                    y1 = sb
                    break
            pb = order[(pos[b] - 1) % n]
            if pa != b and pb != a:
                if delta_two_opt(coords, rounded, order, pos, pa, pb) < -EPS_IMPROVE:
                    apply_two_opt(order, pos, pa, pb)
                    x0 = pa
                    x1 = a
                    y0 = pb
                    y1 = b
                    break
        if x0 >= 0:
            if in_q[x0] == 0:
                ring[(head + count) % n] = x0
                in_q[x0] = 1
                count += 1
            if in_q[x1] == 0:
                ring[(head + count) % n] = x1
                in_q[x1] = 1
                count += 1
            if in_q[y0] == 0:
                ring[(head + count) % n] = y0
                in_q[y0] = 1
                count += 1
            if in_q[y1] == 0:
                ring[(head + count) % n] = y1
                in_q[y1] = 1
                count += 1
    return tour_cost(coords, rounded, order)


@jit
def run_ant(
    coords,
    rounded,
    weights,
    cand,
    backup,
    gb_order,
    gb_pos,
    ib_order,
    ib_pos,
    p_g,
    mne,
    state,
    order,
    pos,
):
    """One ant: pick a reference, construct, then locally optimize.

    Draw order (reference u01, then construction draws) is the contract
    that keeps serial and parallel execution bit-identical.
    """
    n = coords.shape[0]
    new_u = np.empty(3 * n, dtype=np.int64)
    new_v = np.empty(3 * n, dtype=np.int64)
    if rng_u01(state) < p_g:
        cost, n_new = construct(
            coords, rounded, gb_order, gb_pos, weights, cand, backup, mne, state,
            order, pos, new_u, new_v,
        )
    else:
        cost, n_new = construct(
            coords, rounded, ib_order, ib_pos, weights, cand, backup, mne, state,
            order, pos, new_u, new_v,
        )
    seeds = np.empty(2 * n_new, dtype=np.int64)
    for t in range(n_new):
        seeds[2 * t] = new_u[t]
        seeds[2 * t + 1] = new_v[t]
    return two_opt(coords, rounded, order, pos, cand, seeds, 2 * n_new)


@pjit
def run_colony(
    coords,
    rounded,
    weights,
    cand,
    backup,
    gb_order,
    gb_pos,
    ib_order,
    ib_pos,
    p_g,
    mne,
    states,
    out_orders,
    out_costs,
):
    """All ants of one iteration against frozen shared state."""
    n = coords.shape[0]
    n_ants = states.shape[0]
    for a in prange(n_ants):
        order = np.empty(n, dtype=np.int64)
        pos = np.empty(n, dtype=np.int64)
        out_costs[a] = run_ant(
            coords, rounded, weights, cand, backup,
            gb_order, gb_pos, ib_order, ib_pos,
            p_g, mne, states[a], order, pos,
        )
        for t in range(n):
            out_orders[a, t] = order[t]
