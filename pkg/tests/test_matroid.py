import itertools

import numpy as np
import pytest

from chromsieve import field as F
from chromsieve import linalg
from chromsieve.graph import max_bipartite_matching
from chromsieve.matroid import (InfeasibleError, MatroidRep, PartitionSpec, direct_sum, dual_rep,
                                extension_matroid, partition_rep, transversal_rep, truncate_rep,
                                uniform_rep, vandermonde)


def _subsets(ground):
    for r in range(len(ground) + 1):
        yield from itertools.combinations(ground, r)


def _bases(m: MatroidRep):
    return {frozenset(s) for s in itertools.combinations(m.ground, m.rank) if m.is_independent(s)}


def test_uniform_matroid():
    m = uniform_rep("abcdef", 3)
    assert m.rank == 3
    for s in _subsets("abcdef"):
        assert m.is_independent(s) == (len(s) <= 3)
    with pytest.raises(ValueError):
        uniform_rep("ab", 3)


def test_vandermonde_columns_are_distinct_points():
    v = vandermonde(3, 4)
    assert [int(x) for x in v[1]] == [1, 2, 3, 4]
    assert int(v[2, 2]) == F.mul(3, 3)


def test_partition_matroid():
    spec = PartitionSpec([["a", "b", "c"], ["d", "e"], ["f"]], [2, 1, 0])
    m = partition_rep(spec)
    assert m.rank == spec.rank == 3
    part = {g: i for i, p in enumerate(spec.parts) for g in p}
    for s in _subsets(spec.ground):
        counts = [sum(part[g] == i for g in s) for i in range(3)]
        assert m.is_independent(s) == all(c <= cap for c, cap in zip(counts, spec.capacities))
    with pytest.raises(ValueError):
        spec.reduced()
    assert PartitionSpec(spec.parts[:2], [2, 1]).reduced().capacities == (1, 0)
    with pytest.raises(ValueError):
        PartitionSpec([["a"], ["a"]], [1, 1])


def test_transversal_matches_matching_oracle():
    rng = np.random.default_rng(0)
    for trial in range(20):
        left = list(range(6))
        right = list("uvwx")
        edges = [(l, r) for l in left for r in right if rng.random() < 0.4]
        m = transversal_rep(left, right, edges, F.substream(trial, 0))
        ridx = {r: i for i, r in enumerate(right)}
        for s in _subsets(left):
            adj = [[ridx[r] for (l, r) in edges if l == x] for x in s]
            size, _ = max_bipartite_matching(len(s), adj)
            assert m.is_independent(s) == (size == len(s))


def test_dual_bases_are_complements():
    rng = np.random.default_rng(1)
    for r, n in [(0, 3), (2, 5), (3, 6), (4, 4)]:
        while True:
            m = MatroidRep(linalg.random_matrix(rng, r, n), range(n))
            if linalg.rank(m.array) == r:
                break
        low = MatroidRep(np.array(m.array), range(n))
        d = dual_rep(low)
        assert d.rank == n - r
        assert _bases(d) == {frozenset(range(n)) - b for b in _bases(m)}


def test_dual_of_structured_matroid():
    m = direct_sum([uniform_rep("ab", 1), uniform_rep("cde", 2)])
    d = dual_rep(m)
    assert _bases(d) == {frozenset("abcde") - b for b in _bases(m)}


def test_truncation():
    m = uniform_rep(range(7), 5)
    t = truncate_rep(m, 3, F.substream(2))
    for s in _subsets(range(7)):
        assert t.is_independent(s) == (len(s) <= 3)
    assert truncate_rep(m, 5, F.substream(2)) is m
    with pytest.raises(ValueError):
        truncate_rep(m, 6, F.substream(2))


def _star_ok(star, forbidden):
    lists = [sorted(set(lst) - set(forbidden)) for lst in star]
    size, _ = max_bipartite_matching(len(lists), lists)
    return size == len(lists)


def test_extension_matroid_bases():
    rng = np.random.default_rng(3)
    checked = 0
    for trial in range(60):
        k = int(rng.integers(2, 6))
        star = [sorted(rng.choice(np.arange(1, k + 1), size=int(rng.integers(1, k + 1)), replace=False).tolist())
                for _ in range(int(rng.integers(0, k)))]
        if not _star_ok(star, ()):
            with pytest.raises(InfeasibleError):
                extension_matroid(star, k, 1, F.substream(trial))
            continue
        for d_new in range(0, k - len(star) + 1):
            m = extension_matroid(star, k, d_new, F.substream(trial, d_new))
            assert m.rank == d_new
            for c in itertools.combinations(range(1, k + 1), d_new):
                assert m.is_basis(c) == _star_ok(star, c), (k, star, c)
            checked += 1
    assert checked > 60


def test_extension_matroid_infeasible_rank():
    with pytest.raises(InfeasibleError):
        extension_matroid([[1, 2], [1, 2]], 3, 2, F.substream(0))


def test_rep_validation_and_reorder():
    with pytest.raises(ValueError):
        MatroidRep(np.zeros((1, 2), dtype=np.uint64), ["a"])
    with pytest.raises(ValueError):
        MatroidRep(np.zeros((1, 2), dtype=np.uint64), ["a", "a"])
    m = partition_rep(PartitionSpec([["a", "b"], ["c"]], [1, 1]))
    r = m.reorder(["c", "a", "b"])
    assert r.ground == ("c", "a", "b") and r.spans(["c", "b"]) and not r.spans(["a", "b"])
    assert "rank 2" in m.hex_dump()
