"""Instance families shared by the test modules."""

from __future__ import annotations

import networkx as nx
import numpy as np

from chromsieve.generators import complete, cycle, from_networkx, pendant_augmented, petersen, random_gnm, random_lists
from chromsieve.graph import ColoringInstance, Graph
from chromsieve.solver import brute_force_chromatic_index, brute_force_list_colorable


def atlas_connected(max_n: int = 6) -> list[Graph]:
    out = []
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() <= max_n and nx.is_connected(G):
            out.append(from_networkx(G))
    return out


def random_edge_graphs(count: int, seed: int, max_m: int = 14) -> list[Graph]:
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(4, 11))
        hi = min(max_m, n * (n - 1) // 2)
        m = int(rng.integers(n - 1, hi + 1))
        out.append(random_gnm(n, m, seed * 100_000 + i))
    return out


def is_overfull(g: Graph) -> bool:
    return g.n % 2 == 1 and g.m > g.max_degree() * (g.n - 1) // 2


def class2_corpus() -> list[tuple[str, Graph]]:
    """Graphs with chromatic index Delta + 1, each certified by brute force or overfullness."""
    named: list[tuple[str, Graph]] = [(f"C{n}", cycle(n)) for n in (3, 5, 7, 9, 11)]
    named += [("K3", complete(3)), ("K5", complete(5)), ("petersen", petersen())]
    k5e = Graph(5, [e for e in complete(5).edges if e != (0, 1)])
    named.append(("K5-e", k5e))
    pv, _, _ = petersen().induced(range(1, 10))
    named.append(("petersen-v", pv))
    rng = np.random.default_rng(2024)
    tries = 0
    while sum(1 for n, _ in named if n.startswith("overfull")) < 6 and tries < 5000:
        tries += 1
        n = int(rng.choice([5, 7]))
        m = int(rng.integers(n, min(14, n * (n - 1) // 2) + 1))
        g = random_gnm(n, m, 10_000 + tries)
        if is_overfull(g):
            named.append((f"overfull-{tries}", g))
    out = []
    for name, g in named:
        if g.m <= 16:
            chi, _ = brute_force_chromatic_index(g)
            assert chi == g.max_degree() + 1, name
        else:
            assert is_overfull(g), name
        out.append((name, g))
    return out


def random_list_instances(count: int, seed: int, max_m: int = 14) -> list[ColoringInstance]:
    """Connected list instances with max degree <= k; odd positions carry pendant trees."""
    rng = np.random.default_rng(seed)
    out: list[ColoringInstance] = []
    i = 0
    while len(out) < count:
        i += 1
        k = int(rng.integers(2, 5))
        n = int(rng.integers(3, 8))
        p = int(rng.integers(1, 5)) if len(out) % 2 else 0
        lo, hi = n, min(max_m - p, n * (n - 1) // 2)
        m = int(rng.integers(lo, hi + 1)) if hi >= lo else n - 1
        sub = seed * 100_000 + i
        g = pendant_augmented(n, m, p, sub) if p else random_gnm(n, m, sub)
        if g.max_degree() > k or g.m > max_m:
            continue
        out.append(random_lists(g, k, float(rng.uniform(0.5, 0.95)), sub))
    return out


def list_no_corpus() -> list[tuple[str, ColoringInstance]]:
    """List instances that the backtracking oracle rejects."""
    tri = Graph(3, [(0, 1), (1, 2), (0, 2)])
    c4 = cycle(4)
    fixed = [
        ("triangle-12", ColoringInstance(tri, 2, (frozenset({1, 2}),) * 3)),
        ("c4-forced", ColoringInstance(c4, 2, (frozenset({1}), frozenset({1, 2}), frozenset({2}), frozenset({1})))),
        ("c5-two-colours", ColoringInstance(cycle(5), 3, (frozenset({1, 2}),) * 5)),
    ]
    found = [(f"random-{j}", inst) for j, inst in enumerate(random_list_instances(160, 77))
             if not brute_force_list_colorable(inst)[0]]
    out = fixed + found
    for name, inst in out:
        assert not brute_force_list_colorable(inst)[0], name
    return out
