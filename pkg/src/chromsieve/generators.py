"""Deterministic instance generators."""

from __future__ import annotations

import networkx as nx
import numpy as np

from .graph import ColoringInstance, Graph

FAMILIES = ("random-gnm", "random-regular", "cycle", "complete", "pendant-augmented")


def from_networkx(G: nx.Graph) -> Graph:
    nodes = sorted(G.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in G.edges()))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs at least one vertex")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen() -> Graph:
    return from_networkx(nx.petersen_graph())


def random_gnm(n: int, m: int, seed: int, connected: bool = True, attempts: int = 1000) -> Graph:
    """Uniform G(n, m); with ``connected`` the first connected draw is kept."""
    if m > n * (n - 1) // 2:
        raise ValueError(f"{m} edges do not fit on {n} vertices")
    if connected and m < n - 1:
        raise ValueError(f"{m} edges cannot connect {n} vertices")
    ss = np.random.SeedSequence(seed)
    for child in ss.spawn(attempts):
        G = nx.gnm_random_graph(n, m, seed=int(child.generate_state(1)[0]))
        if not connected or nx.is_connected(G):
            return from_networkx(G)
    raise ValueError("no connected draw found; raise m")


def random_regular(d: int, n: int, seed: int) -> Graph:
    if d >= n or (d * n) % 2:
        raise ValueError(f"no {d}-regular graph on {n} vertices")
    return from_networkx(nx.random_regular_graph(d, n, seed=seed))


def pendant_augmented(n: int, m: int, pendants: int, seed: int) -> Graph:
    """A connected G(n, m) with ``pendants`` extra vertices grown as trees on it."""
    base = random_gnm(n, m, seed)
    rng = np.random.default_rng([seed, 1])
    edges = list(base.edges)
    total = n
    for _ in range(pendants):
        anchor = int(rng.integers(total))
        edges.append((anchor, total))
        total += 1
    return Graph(total, edges)


def random_lists(g: Graph, k: int, density: float, seed: int) -> ColoringInstance:
    """Keep each colour of [k] with probability ``density``; lists never empty."""
    rng = np.random.default_rng([seed, 2])
    lists = []
    for _ in range(g.m):
        keep = [c for c in range(1, k + 1) if rng.random() < density]
        if not keep:
            keep = [int(rng.integers(1, k + 1))]
        lists.append(frozenset(keep))
    return ColoringInstance(g, k, tuple(lists))


def generate(family: str, params: list[int], seed: int = 0) -> Graph:
    arity = {"random-gnm": 2, "random-regular": 2, "cycle": 1, "complete": 1, "pendant-augmented": 3}
    if family not in arity:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if len(params) != arity[family]:
        raise ValueError(f"{family} takes {arity[family]} integer parameters")
    if family == "cycle":
        return cycle(*params)
    if family == "complete":
        return complete(*params)
    if family == "random-gnm":
        return random_gnm(params[0], params[1], seed)
    if family == "random-regular":
        return random_regular(params[0], params[1], seed)
    return pendant_augmented(params[0], params[1], params[2], seed)
