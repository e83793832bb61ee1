"""List edge coloring on trees, and pruning attached trees down to pendant edges."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import ColoringInstance, Graph, PeelResult, max_bipartite_matching, peel_unit_degree


@dataclass(frozen=True)
class TreeInstance:
    tree: Graph
    k: int
    lists: tuple[frozenset[int], ...]
    forced: tuple[int, int] | None = None   # (edge index, colour)

    def __post_init__(self):
        if not self.tree.is_tree():
            raise ValueError("input graph is not a tree")
        if len(self.lists) != self.tree.m:
            raise ValueError("one list per edge is required")
        if self.forced is not None:
            e, c = self.forced
            if c not in self.lists[e]:
                raise ValueError("forced colour is not in the edge's list")


class _TreeDP:
    """Memoised feasibility of hanging subtrees.

    ``ok(v, e, c)``: with edge ``e`` entering ``v`` from its parent coloured
    ``c``, can the edges below ``v`` be list-coloured?  The child edges of
    ``v`` need distinct colours other than ``c`` that their own subtrees
    accept, which is a bipartite matching between child edges and colours.
    """

    def __init__(self, tree: Graph, lists: Sequence[frozenset[int]]):
        self.tree = tree
        self.lists = lists
        self.memo: dict[tuple[int, int, int], bool] = {}

    def ok(self, v: int, e: int, c: int) -> bool:
        key = (v, e, c)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        children = [(w, f) for w, f in self.tree.adj[v] if f != e]
        adj = []
        for w, f in children:
            adj.append([j for j in sorted(self.lists[f]) if j != c and self.ok(w, f, j)])
        size, _ = max_bipartite_matching(len(children), adj)
        res = size == len(children)
        self.memo[key] = res
        return res

    def edge_colours(self, e: int) -> set[int]:
        u, w = self.tree.edges[e]
        return {c for c in self.lists[e] if self.ok(u, e, c) and self.ok(w, e, c)}


def admissible_root_colors(t: TreeInstance, e: int) -> set[int]:
    """Colours of edge ``e`` that extend to a list coloring of the whole tree."""
    return _TreeDP(t.tree, t.lists).edge_colours(e)


def _root_edge(tree: Graph) -> int:
    for v in range(tree.n):
        if tree.degree(v) == 1:
            return tree.adj[v][0][1]
    raise AssertionError("a tree with an edge has a leaf")


def tree_list_colorable(t: TreeInstance) -> bool:
    if t.tree.m == 0:
        return True
    if t.forced is not None:
        e, c = t.forced
        return c in admissible_root_colors(t, e)
    return bool(admissible_root_colors(t, _root_edge(t.tree)))


@dataclass
class PruneResult:
    """Instance after every attached tree became a single pendant edge.

    ``instance`` is on the original vertex numbering restricted to the kept
    vertices (relabelled densely); ``peel`` is its unit-degree peeling.
    """

    instance: ColoringInstance
    peel: PeelResult
    kept: list[int]


def prune_trees(inst: ColoringInstance, peel: PeelResult | None = None) -> PruneResult | None:
    """Replace each attached tree by its connecting edge with recomputed list.

    Returns None when some connecting edge has no admissible colour (the
    instance is a NO).
    """
    g = inst.graph
    lists = inst.all_lists()
    peel = peel if peel is not None else peel_unit_degree(g)
    if peel.is_tree_case:
        raise ValueError("the whole graph is a tree; solve it directly")
    new_lists = list(lists)
    drop: set[int] = set()
    for comp, att in zip(peel.trees, peel.attach):
        anchor, link = att
        root = g.edges[link][0] if g.edges[link][1] == anchor else g.edges[link][1]
        body = [i for i, (a, b) in enumerate(g.edges) if a in set(comp) and b in set(comp)]
        sub, _, emap = g.edge_subgraph(body + [link])
        sub_lists = tuple(lists[i] for i in emap)
        local = emap.index(link)
        allowed = admissible_root_colors(TreeInstance(sub, inst.k, sub_lists), local)
        if not allowed:
            return None
        new_lists[link] = frozenset(allowed)
        drop.update(v for v in comp if v != root)
    kept = [v for v in range(g.n) if v not in drop]
    reduced, _, emap = g.induced(kept)
    rinst = ColoringInstance(reduced, inst.k, tuple(new_lists[i] for i in emap))
    rpeel = peel_unit_degree(reduced)
    assert rpeel.g_new.m == peel.g_new.m and all(len(c) == 1 for c in rpeel.trees), (
        "pruning changed the core or left a multi-vertex tree")
    return PruneResult(rinst, rpeel, kept)
