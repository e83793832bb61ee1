"""Dominating sets: Ore's half bound, path rules, a structured exact search
over high-degree vertices, and plain exhaustive search."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, max_bipartite_matching

EXHAUSTIVE_CAP = 24


@dataclass(frozen=True)
class DomSetResult:
    vertices: tuple[int, ...]
    certified_minimum: bool
    method: str
    bounds: tuple[str, ...] = ()

    @property
    def size(self) -> int:
        return len(self.vertices)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def to_dict(self, labels=None) -> dict:
        verts = [labels[v] for v in self.vertices] if labels else [v + 1 for v in self.vertices]
        return {"size": self.size, "vertices": verts, "method": self.method,
                "certified_minimum": self.certified_minimum}


def _bounds_for(g: Graph, size: int, certified: bool) -> tuple[str, ...]:
    out = []
    if 2 * size <= g.n + 1:
        out.append("n/2")
    if certified and g.n >= 8 and g.min_degree() >= 2 and g.is_connected():
        out.append("2n/5")
    if certified:
        out.append("minimum")
    return tuple(out)


def _result(g: Graph, verts, certified: bool, method: str) -> DomSetResult:
    verts = tuple(sorted(verts))
    if not g.is_dominating(verts):
        raise AssertionError(f"{method} produced a non-dominating set {verts}")
    return DomSetResult(verts, certified, method, _bounds_for(g, len(verts), certified))


def ore_half(g: Graph) -> DomSetResult:
    """Minimal dominating set D, then the smaller of D and V minus D."""
    if not g.is_connected():
        raise ValueError("ore_half needs a connected graph")
    if g.n <= 1:
        return _result(g, range(g.n), False, "ore")
    dom = set(range(g.n))
    for v in range(g.n):
        dom.discard(v)
        if not g.is_dominating(dom):
            dom.add(v)
    rest = set(range(g.n)) - dom
    pick = dom if len(dom) <= len(rest) else rest
    return _result(g, pick, False, "ore")


def path_domset(p: int, prefer: str = "last") -> list[int]:
    """Minimum dominating set of the path 0..p-1 with fixed endpoint behaviour.

    Sizes are ceil(p/3).  p = 1 (mod 3) uses both endpoints, p = 0 (mod 3)
    neither; for p = 2 (mod 3) exactly one, the last by default or the first
    with ``prefer="first"``.
    """
    if p < 1:
        raise ValueError("path needs at least one vertex")
    r = p % 3
    if r == 1:
        return list(range(0, p, 3))
    if r == 2:
        return list(range(0, p - 1, 3)) if prefer == "first" else list(range(1, p, 3))
    return list(range(1, p, 3))


def _cycle_order(g: Graph) -> list[int]:
    order = [0]
    prev, cur = -1, 0
    while True:
        nxt = [w for w in g.neighbors(cur) if w != prev]
        if not nxt or nxt[0] == 0:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def _v2_paths(g: Graph, v3: set[int]) -> list[tuple[list[int], int, int]]:
    """Paths of G[V2] as (vertex order, outer neighbour of first, of last)."""
    seen: set[int] = set()
    out = []
    for s in range(g.n):
        if s in v3 or s in seen:
            continue
        inner = [w for w in g.neighbors(s) if w not in v3]
        if len(inner) == 2:
            continue  # not an endpoint; reached from one later
        path = [s]
        seen.add(s)
        prev, cur = -1, s
        while True:
            nxt = [w for w in g.neighbors(cur) if w not in v3 and w != prev and w not in seen]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            path.append(cur)
            seen.add(cur)
        first_out = sorted(w for w in g.neighbors(path[0]) if w in v3)
        last_out = sorted(w for w in g.neighbors(path[-1]) if w in v3)
        if len(path) == 1:
            a, b = first_out
        else:
            (a,), (b,) = first_out, last_out
        out.append((path, a, b))
    if len(seen) + len(v3) != g.n:
        raise AssertionError("degree-two vertices form a cycle next to high-degree vertices")
    return out


def min_domset_structured(g: Graph) -> DomSetResult:
    """Exact minimum dominating set in time exponential only in |V3|.

    Needs a connected graph of minimum degree two.  Every subset D3 of the
    degree >= 3 vertices is tried; degree-two paths are then filled in by
    fixed rules and a bipartite matching.
    """
    if g.n < 3 or not g.is_connected() or g.min_degree() < 2:
        raise ValueError("structured search needs a connected graph with minimum degree 2")
    v3_list = [v for v in range(g.n) if g.degree(v) >= 3]
    if not v3_list:
        order = _cycle_order(g)
        return _result(g, [order[i] for i in path_domset(len(order))], True, "structured")
    v3 = set(v3_list)
    paths = _v2_paths(g, v3)
    best: tuple[int, tuple[int, ...]] | None = None
    for mask in range(1 << len(v3_list)):
        d3 = {v3_list[i] for i in range(len(v3_list)) if mask >> i & 1}
        cand = _extend_guess(g, v3_list, d3, paths)
        if cand is None:
            continue
        key = (len(cand), tuple(sorted(cand)))
        if best is None or key < best:
            best = key
    assert best is not None, "the guess D3 = V3 is always feasible"
    return _result(g, best[1], True, "structured")


def _extend_guess(g: Graph, v3_list, d3: set[int], paths) -> set[int] | None:
    dom = set(d3)
    family = []
    for path, a, b in paths:
        p = len(path)
        ina, inb = a in d3, b in d3
        if ina and inb:
            if p > 2:
                dom.update(path[1 + i] for i in path_domset(p - 2))
        elif ina or inb:
            if inb:
                path, a, b = path[::-1], b, a
            rest = path[1:]
            q = len(rest)
            if q == 0:
                continue
            if q % 3 == 1:
                return None  # a guess with more high-degree vertices does at least as well
            dom.update(rest[i] for i in path_domset(q, prefer="last"))
        else:
            if p % 3 == 2:
                family.append((path, a, b))
            else:
                dom.update(path[i] for i in path_domset(p))
    covered = set(dom)
    for v in dom:
        covered.update(g.neighbors(v))
    need = [w for w in v3_list if w not in covered]
    adj = [[j for j, (_, a, b) in enumerate(family) if w in (a, b)] for w in need]
    size, match = max_bipartite_matching(len(need), adj)
    if size < len(need):
        return None
    target = {j: need[i] for i, j in enumerate(match) if j >= 0}
    for j, (path, a, b) in enumerate(family):
        prefer = "first" if target.get(j) == a else "last"
        dom.update(path[i] for i in path_domset(len(path), prefer=prefer))
    if not g.is_dominating(dom):
        return None
    return dom


def min_domset_exhaustive(g: Graph, cap: int = EXHAUSTIVE_CAP) -> DomSetResult:
    """Smallest (then lexicographically first) dominating set by enumeration."""
    if g.n > cap:
        raise ValueError(f"n = {g.n} exceeds the exhaustive cap {cap}")
    nbhd = [(1 << v) | sum(1 << w for w in g.neighbors(v)) for v in range(g.n)]
    full = (1 << g.n) - 1
    for size in range(g.n + 1):
        for combo in combinations(range(g.n), size):
            cov = 0
            for v in combo:
                cov |= nbhd[v]
            if cov == full:
                return _result(g, combo, True, "exhaustive")
    raise AssertionError("unreachable: V dominates itself")


def domset_for_solver(g: Graph, policy: str = "auto", structured_cap: int = 16,
                      exhaustive_cap: int = 20) -> DomSetResult:
    """Pick a dominating-set routine for a peeled (minimum degree 2) graph."""
    if policy == "ore":
        return ore_half(g)
    if policy == "exhaustive":
        return min_domset_exhaustive(g)
    if policy == "structured":
        return min_domset_structured(g)
    if policy != "auto":
        raise ValueError(f"unknown dominating-set policy {policy!r}")
    n3 = sum(1 for d in g.degrees() if d >= 3)
    if g.n >= 3 and g.min_degree() >= 2 and g.is_connected() and n3 <= structured_cap:
        return min_domset_structured(g)
    if g.n <= exhaustive_cap:
        return min_domset_exhaustive(g)
    return ore_half(g)
