import numpy as np
import pytest

from chromsieve import field as F
from chromsieve.domset import min_domset_exhaustive
from chromsieve.enumpoly import build_context
from chromsieve.generators import complete, cycle, petersen
from chromsieve.graph import Graph, edge_instance
from chromsieve.matroid import PartitionSpec, uniform_rep
from chromsieve.polyoracle import SparsePoly, random_sparse_poly
from chromsieve.sieve import (MAX_LOG_COMBOS, EvalCounter, EvalOracle, coeff_extract, detect_full_monomial,
                              ie_restrict, interpolate_coeff, lagrange_at_zero, odd_sieve, partition_sieve,
                              plan_detection, sample_points)

NAMES = ("a", "b", "c", "d")


def _poly(rng, **kw):
    return random_sparse_poly(rng, NAMES, kw.get("deg", 5), kw.get("terms", 8))


def _divisible_part(p: SparsePoly, T) -> SparsePoly:
    idx = [p.vars.index(t) for t in T]
    return SparsePoly(p.vars, {e: c for e, c in p.terms.items() if all(e[i] for i in idx)})


def test_lagrange_and_interpolation():
    rng = np.random.default_rng(0)
    coeffs = [F.random_elem(rng) for _ in range(5)]

    def f(zs):
        out = []
        for z in zs:
            v = 0
            for i, c in enumerate(coeffs):
                v ^= F.mul(c, F.power(int(z), i))
            out.append(v)
        return np.array(out, dtype=np.uint64)

    pts = sample_points(5)
    assert lagrange_at_zero(pts, f(pts)) == coeffs[0]
    for t in range(5):
        assert interpolate_coeff(f, 4, t) == coeffs[t]
    with pytest.raises(ValueError):
        interpolate_coeff(f, 4, 5)


def test_ie_restrict_keeps_divisible_monomials():
    rng = np.random.default_rng(1)
    for _ in range(25):
        p = _poly(rng)
        T = list(rng.choice(NAMES, size=int(rng.integers(1, 4)), replace=False))
        q = ie_restrict(EvalOracle.from_poly(p), T)
        want = _divisible_part(p, T)
        x = F.random_elems(rng, (3, 4))
        assert [int(v) for v in q.eval_batch(x)] == [int(v) for v in want.evaluate_many(x)]


def test_coeff_extract_matches_symbolic_coefficient():
    rng = np.random.default_rng(2)
    for _ in range(25):
        p = _poly(rng, deg=6)
        T = list(rng.choice(NAMES, size=int(rng.integers(1, 4)), replace=False))
        q = coeff_extract(EvalOracle.from_poly(p), T)
        want = p.coefficient_of(T)
        assert q.variables == want.vars
        x = F.random_elems(rng, (3, len(want.vars)))
        assert [int(v) for v in q.eval_batch(x)] == [int(v) for v in want.evaluate_many(x)]


def test_coeff_extract_beyond_degree_is_zero():
    p = SparsePoly(NAMES, {(1, 0, 0, 0): 5})
    q = coeff_extract(EvalOracle.from_poly(p), ["a", "b"])
    assert q(np.array([3, 4], dtype=np.uint64)) == 0


def test_odd_sieve_edge_cases_and_counts():
    p = SparsePoly(NAMES, {(1, 1, 0, 0): 1, (0, 0, 2, 0): 1})
    m0 = uniform_rep(NAMES, 0)
    v = odd_sieve(EvalOracle.from_poly(p), m0, 2, F.substream(0))
    assert v.found and v.evaluations == 1
    v = odd_sieve(EvalOracle.from_poly(p), uniform_rep(NAMES, 3), 2, F.substream(0))
    assert not v.found and v.evaluations == 0
    v = odd_sieve(EvalOracle.from_poly(p), uniform_rep(NAMES, 2), 2, F.substream(0))
    assert v.found and v.evaluations == 4 * 1
    with pytest.raises(ValueError):
        odd_sieve(EvalOracle.from_poly(p), uniform_rep("xyz", 1), 2, F.substream(0))


def test_odd_sieve_ignores_even_exponents():
    # a^2 b^2 has empty odd support; a^3 b has odd support {a, b}
    even = SparsePoly(("a", "b"), {(2, 2): 7})
    odd = SparsePoly(("a", "b"), {(3, 1): 7})
    m = uniform_rep(("a", "b"), 2)
    for seed in range(5):
        assert not odd_sieve(EvalOracle.from_poly(even), m, 4, F.substream(seed)).found
        assert odd_sieve(EvalOracle.from_poly(odd), m, 4, F.substream(seed)).found


def test_partition_sieve_detects_multilinear_terms():
    names = ("a", "b", "c", "d")
    spec = PartitionSpec([["a", "b"], ["c", "d"]], [2, 1])
    yes = SparsePoly(names, {(1, 1, 1, 0): 3, (2, 0, 0, 1): 1})
    no = SparsePoly(names, {(2, 0, 1, 0): 3, (0, 2, 0, 1): 1})
    for seed in range(5):
        assert partition_sieve(EvalOracle.from_poly(yes), spec, 3, F.substream(seed)).found
        assert not partition_sieve(EvalOracle.from_poly(no), spec, 3, F.substream(seed)).found
    with pytest.raises(ValueError):
        partition_sieve(EvalOracle.from_poly(yes), PartitionSpec([["a", "b"], ["c", "d"]], [2, 0]), 3,
                        F.substream(0))


def test_plan_detection():
    g = cycle(6)
    plan = plan_detection(g, [0, 3])
    assert plan.v_prime == (1, 2, 4, 5)
    assert len(plan.e_prime) == 4 and plan.extracted == (g.edge_index(1, 2), g.edge_index(4, 5))
    assert plan.sieve_rank == 0 and plan.log_combos == 2 and plan.evaluations == 4 * 5
    with pytest.raises(ValueError):
        plan_detection(g, [0])


@pytest.mark.parametrize("g", [cycle(4), cycle(5), complete(4), Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])],
                         ids=["C4", "C5", "K4", "diamond"])
def test_fused_equals_composed(g):
    dom = min_domset_exhaustive(g)
    for seed in range(3):
        ctx = build_context(edge_instance(g), "edge", F.substream(seed, 0))
        fused = detect_full_monomial(ctx, dom, F.substream(seed, 1), fused=True)
        composed = detect_full_monomial(ctx, dom, F.substream(seed, 1), fused=False)
        assert fused.value == composed.value
        assert fused.evaluations == plan_detection(g, dom.vertices).evaluations


def test_fused_value_independent_of_jobs():
    g = petersen()
    dom = min_domset_exhaustive(g)
    ctx = build_context(edge_instance(g), "edge", F.substream(4, 0))
    a = detect_full_monomial(ctx, dom, F.substream(4, 1), jobs=1)
    b = detect_full_monomial(ctx, dom, F.substream(4, 1), jobs=4)
    assert (a.value, a.evaluations) == (b.value, b.evaluations) and not a.found


def test_counter_is_shared():
    g = cycle(6)
    ctx = build_context(edge_instance(g), "edge", F.substream(0))
    counter = EvalCounter()
    detect_full_monomial(ctx, [0, 3], F.substream(1), counter=counter)
    detect_full_monomial(ctx, [0, 3], F.substream(2), counter=counter)
    assert counter.count == 2 * 20


def test_budget_guard():
    g = complete(12)
    ctx = build_context(edge_instance(g), "edge", F.substream(0))
    plan = plan_detection(g, [0])
    assert plan.log_combos > MAX_LOG_COMBOS
    with pytest.raises(ValueError):
        detect_full_monomial(ctx, [0], F.substream(1))


def test_oracle_arity_checks():
    p = SparsePoly(("a", "b"), {(1, 1): 1})
    o = EvalOracle.from_poly(p)
    with pytest.raises(ValueError):
        o.eval_batch(np.zeros((2, 3), dtype=np.uint64))
    assert o({"a": 2, "b": 3}) == 6 and o.counter.count == 1
    const = EvalOracle.from_poly(SparsePoly.const(9))
    assert int(const.eval_batch(np.zeros((2, 0), dtype=np.uint64))[1]) == 9
