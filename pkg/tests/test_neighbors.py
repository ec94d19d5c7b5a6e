import numpy as np
import pytest

import focusedaco as fa


def brute_force_rows(instance, m):
    """Full-sort oracle: the m nearest of every node by (distance, index)."""
    n = instance.n
    out = np.empty((n, m), dtype=np.int64)
    for i in range(n):
        d = instance.distance_row(i)
        d[i] = np.inf
        out[i] = sorted(range(n), key=lambda j: (d[j], j))[:m]
    return out


def test_collinear_endpoints():
    inst = fa.Instance(
        name="line",
        coords=np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]]),
    )
    nm = fa.build_neighbors(inst, k=2, bkp=0)
    assert nm.cand[0].tolist() == [1, 2]
    assert nm.cand[3].tolist() == [2, 1]


def test_truncation():
    inst = fa.generate_random(10, seed=1)
    nm = fa.build_neighbors(inst, k=20, bkp=64)
    assert nm.k == 9
    assert nm.bkp == 0
    assert nm.cand.shape == (10, 9)
    assert nm.backup.shape == (10, 0)


def test_matches_full_sort_oracle():
    inst = fa.generate_random(50, seed=21)
    nm = fa.build_neighbors(inst, k=5, bkp=7)
    expected = brute_force_rows(inst, 12)
    assert np.array_equal(nm.cand, expected[:, :5])
    assert np.array_equal(nm.backup, expected[:, 5:])


def test_tie_break_by_index_on_grid():
    # integer grid under the rounded metric forces many exact ties
    xs, ys = np.meshgrid(np.arange(5.0), np.arange(5.0))
    coords = np.column_stack([xs.ravel(), ys.ravel()])
    inst = fa.Instance(name="grid", coords=coords, edge_metric=fa.EUCLID_ROUNDED)
    nm = fa.build_neighbors(inst, k=8, bkp=6)
    expected = brute_force_rows(inst, 14)
    assert np.array_equal(nm.cand, expected[:, :8])
    assert np.array_equal(nm.backup, expected[:, 8:])


def test_candidate_separation_invariant():
    inst = fa.generate_random(40, seed=3)
    nm = fa.build_neighbors(inst, k=6, bkp=4)
    for i in range(inst.n):
        d = inst.distance_row(i)
        inside = set(nm.cand[i].tolist())
        worst_inside = max(d[j] for j in inside)
        for j in range(inst.n):
            if j != i and j not in inside:
                assert d[j] >= worst_inside - 1e-12
        # distances non-decreasing along cand then backup
        chain = nm.cand[i].tolist() + nm.backup[i].tolist()
        dists = [d[j] for j in chain]
        assert all(a <= b + 1e-12 for a, b in zip(dists, dists[1:]))


def test_no_self_and_no_duplicates():
    inst = fa.generate_random(30, seed=9)
    nm = fa.build_neighbors(inst, k=10, bkp=10)
    for i in range(inst.n):
        chain = nm.cand[i].tolist() + nm.backup[i].tolist()
        assert i not in chain
        assert len(set(chain)) == len(chain)


def test_rank_consistency():
    inst = fa.generate_random(25, seed=4)
    nm = fa.build_neighbors(inst, k=7, bkp=3)
    for i in range(inst.n):
        for r in range(nm.k):
            assert nm.rank(i, int(nm.cand[i, r])) == r
        for j in nm.backup[i]:
            assert nm.rank(i, int(j)) == -1
    a = np.repeat(np.arange(25), 7)
    b = nm.cand.ravel()
    assert np.array_equal(nm.ranks(a, b), np.tile(np.arange(7), 25))


def test_bad_k():
    inst = fa.generate_random(10, seed=0)
    with pytest.raises(ValueError):
        fa.build_neighbors(inst, k=0, bkp=5)
    with pytest.raises(ValueError):
        fa.build_neighbors(inst, k=3, bkp=-1)
