import math
from collections import deque

import numpy as np
import pytest

import focusedaco as fa
from focusedaco.errors import DegenerateMoveError
from focusedaco.rng import Stream

from conftest import naive_cost, naive_dist, random_order, unit_square


def reference_two_opt(coords, rounded, start_order, seed_nodes):
    """Unrestricted first-improvement 2-opt with the production scan order.

    Same pivot policy (queue of pending nodes, neighbors by ascending
    distance then index, successor direction before predecessor, shorter
    arc reversed) but fully independent mechanics: python lists, position
    by list.index, and every delta taken from a full cost recomputation of
    the candidate tour.
    """
    n = len(start_order)
    order = [int(x) for x in start_order]

    def d(i, j):
        return naive_dist(coords, rounded, i, j)

    def cost(o):
        return naive_cost(coords, rounded, o)

    def reverse_arc(o, i, j):
        out = list(o)
        inner = (j - i) % n + 1
        if inner <= n - inner:
            lo, m = i, inner
        else:
            lo, m = (j + 1) % n, n - inner
        idxs = [(lo + t) % n for t in range(m)]
        vals = [o[x] for x in idxs]
        for x, v in zip(idxs, reversed(vals)):
            out[x] = v
        return out

    in_q = [False] * n
    ring = deque()
    for a in seed_nodes:
        if not in_q[a]:
            ring.append(a)
            in_q[a] = True
    while ring:
        a = ring.popleft()
        in_q[a] = False
        pa = order[(order.index(a) - 1) % n]
        neighbors = sorted((b for b in range(n) if b != a), key=lambda b: (d(a, b), b))
        applied = None
        for b in neighbors:
            ia = order.index(a)
            ib = order.index(b)
            sa = order[(ia + 1) % n]
            sb = order[(ib + 1) % n]
            if b != sa and sb != a:
                cand = reverse_arc(order, (ia + 1) % n, ib)
                if cost(cand) - cost(order) < -1e-10:
                    order = cand
                    applied = (a, sa, b, sb)
                    break
            pb = order[(ib - 1) % n]
            if pa != b and pb != a:
                ipa = order.index(pa)
                ipb = order.index(pb)
                cand = reverse_arc(order, (ipa + 1) % n, ipb)
                if cost(cand) - cost(order) < -1e-10:
                    order = cand
                    applied = (pa, a, pb, b)
                    break
        if applied:
            for node in applied:
                if not in_q[node]:
                    ring.append(node)
                    in_q[node] = True
    return order


def full_seed_nodes(order):
    # endpoints of every tour edge, in tour order, deduplicated downstream
    n = len(order)
    flat = []
    for t in range(n):
        flat.append(int(order[t]))
        flat.append(int(order[(t + 1) % n]))
    return flat


class TestDelta2opt:
    def test_crossed_square_value(self):
        inst = unit_square()
        tour = fa.Tour.from_order(inst, [0, 2, 1, 3])
        # uncrossing removes the two diagonals: gain is 2*sqrt(2) - 2
        delta = fa.delta_2opt(inst, tour, 0, 1)
        assert delta == pytest.approx(-(2 * math.sqrt(2) - 2), abs=1e-12)
        after = [0, 1, 2, 3]
        assert delta == pytest.approx(
            naive_cost(inst.coords, False, after)
            - naive_cost(inst.coords, False, tour.order),
            abs=1e-12,
        )

    def test_matches_recompute_on_random_pairs(self):
        inst = fa.generate_random(18, seed=90)
        rng = Stream.from_seed(21)
        checked = 0
        while checked < 100:
            order = random_order(inst.n, rng)
            tour = fa.Tour.from_order(inst, order)
            a, b = rng.randint(inst.n), rng.randint(inst.n)
            if a == b or tour.succ(a) == b or tour.succ(b) == a:
                continue
            delta = fa.delta_2opt(inst, tour, a, b)
            ia, ib = int(tour.position[a]), int(tour.position[b])
            n = inst.n
            inner = (ib - ia - 1) % n + 1
            if inner <= n - inner:
                lo, m = (ia + 1) % n, inner
            else:
                lo, m = (ib + 1) % n, n - inner
            after = [int(x) for x in order]
            idxs = [(lo + t) % n for t in range(m)]
            vals = [after[x] for x in idxs]
            for x, v in zip(idxs, reversed(vals)):
                after[x] = v
            expected = naive_cost(inst.coords, False, after) - naive_cost(
                inst.coords, False, order
            )
            assert delta == pytest.approx(expected, abs=1e-9)
            checked += 1

    def test_degenerate(self):
        inst = unit_square()
        tour = fa.Tour.from_order(inst, [0, 1, 2, 3])
        with pytest.raises(DegenerateMoveError):
            fa.delta_2opt(inst, tour, 1, 1)
        with pytest.raises(DegenerateMoveError):
            fa.delta_2opt(inst, tour, 1, 2)


class TestTwoOptRestricted:
    def test_optimal_tour_unchanged(self):
        inst = unit_square()
        nm = fa.build_neighbors(inst, k=3, bkp=0)
        tour = fa.Tour.from_order(inst, [0, 1, 2, 3])
        before = tour.order.copy()
        fa.two_opt_restricted(inst, tour, tour.edges(), nm)
        assert np.array_equal(tour.order, before)
        assert tour.cost == pytest.approx(4.0)

    def test_uncrosses_square(self):
        inst = unit_square()
        nm = fa.build_neighbors(inst, k=3, bkp=0)
        tour = fa.Tour.from_order(inst, [0, 2, 1, 3])
        fa.two_opt_restricted(inst, tour, tour.edges(), nm)
        assert tour.cost == pytest.approx(4.0)
        tour.check(inst)

    def test_never_increases_and_stays_valid(self):
        rng = Stream.from_seed(22)
        for trial in range(20):
            inst = fa.generate_random(30, seed=100 + trial)
            nm = fa.build_neighbors(inst, k=8, bkp=6)
            tour = fa.Tour.from_order(inst, random_order(inst.n, rng))
            before = tour.cost
            fa.two_opt_restricted(inst, tour, tour.edges(), nm)
            assert tour.cost <= before + 1e-12
            tour.check(inst)

    def test_invalid_seed_edge(self):
        inst = unit_square()
        nm = fa.build_neighbors(inst, k=3, bkp=0)
        tour = fa.Tour.from_order(inst, [0, 1, 2, 3])
        with pytest.raises(ValueError):
            fa.two_opt_restricted(inst, tour, [(0, 2)], nm)

    def test_matches_unrestricted_oracle_small(self):
        rng = Stream.from_seed(23)
        for trial in range(20):
            n = (8, 10, 12)[trial % 3]
            inst = fa.generate_random(n, seed=200 + trial)
            nm = fa.build_neighbors(inst, k=n - 1, bkp=0)
            order = random_order(n, rng)
            tour = fa.Tour.from_order(inst, order.copy())
            seeds = full_seed_nodes(order)
            expected_order = reference_two_opt(inst.coords, inst.rounded, order, seeds)
            fa.two_opt_restricted(inst, tour, tour.edges(), nm)
            expected_cost = naive_cost(inst.coords, inst.rounded, expected_order)
            assert tour.cost == pytest.approx(expected_cost, abs=1e-9)

    def test_strict_decrease_when_moves_applied(self):
        inst = fa.generate_random(25, seed=300)
        nm = fa.build_neighbors(inst, k=10, bkp=0)
        rng = Stream.from_seed(24)
        improved = 0
        for _ in range(10):
            tour = fa.Tour.from_order(inst, random_order(inst.n, rng))
            before_order = tour.order.copy()
            before_cost = tour.cost
            fa.two_opt_restricted(inst, tour, tour.edges(), nm)
            if not np.array_equal(tour.order, before_order):
                assert tour.cost < before_cost - 1e-10
                improved += 1
        assert improved > 0
