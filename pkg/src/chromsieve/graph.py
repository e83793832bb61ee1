"""Simple undirected graphs, coloring instances, I/O and peeling."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence


class ParseError(ValueError):
    """Malformed instance text."""


class Graph:
    """Simple graph on vertices 0..n-1 with an ordered edge list.

    Edge ``i`` is ``edges[i] = (u, v)`` with ``u < v``.  Original vertex
    labels are kept for output.
    """

    __slots__ = ("n", "edges", "labels", "adj", "_eid")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[Hashable] | None = None):
        self.n = int(n)
        es = []
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            es.append(e)
        self.edges: tuple[tuple[int, int], ...] = tuple(es)
        self.labels = tuple(labels) if labels is not None else tuple(range(1, self.n + 1))
        if len(self.labels) != self.n:
            raise ValueError("label count does not match vertex count")
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        self.adj = tuple(tuple(a) for a in adj)
        self._eid = {e: i for i, e in enumerate(self.edges)}

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_index(self, u: int, v: int) -> int:
        return self._eid[(min(u, v), max(u, v))]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._eid

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self.adj[v]]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def components(self) -> list[list[int]]:
        """Vertex sets of the connected components, each sorted, in order of least vertex."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y, _ in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int], list[int]]:
        """Induced subgraph, relabelled densely.

        Returns the subgraph, the original vertex of each new vertex, and the
        original edge index of each new edge.
        """
        vs = sorted(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        new_edges, emap = [], []
        for i, (u, v) in enumerate(self.edges):
            if u in pos and v in pos:
                new_edges.append((pos[u], pos[v]))
                emap.append(i)
        return Graph(len(vs), new_edges, [self.labels[v] for v in vs]), vs, emap

    def edge_subgraph(self, edge_ids: Iterable[int]) -> tuple["Graph", list[int], list[int]]:
        """Subgraph on the given edges and their endpoints, relabelled densely."""
        ids = sorted(set(edge_ids))
        vs = sorted({x for i in ids for x in self.edges[i]})
        pos = {v: i for i, v in enumerate(vs)}
        g = Graph(len(vs), [(pos[self.edges[i][0]], pos[self.edges[i][1]]) for i in ids],
                  [self.labels[v] for v in vs])
        return g, vs, ids

    def is_dominating(self, dom: Iterable[int]) -> bool:
        d = set(dom)
        return all(v in d or any(w in d for w, _ in self.adj[v]) for v in range(self.n))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ColoringInstance:
    """A graph with ``k`` colours and one colour list per edge.

    ``lists is None`` marks plain edge coloring, where ``k`` is the maximum
    degree and every list is the full range.
    """

    graph: Graph
    k: int
    lists: tuple[frozenset[int], ...] | None = None

    def __post_init__(self):
        if self.lists is not None:
            if len(self.lists) != self.graph.m:
                raise ValueError("one list per edge is required")
            for lst in self.lists:
                if any(not 1 <= c <= self.k for c in lst):
                    raise ValueError(f"list {sorted(lst)} has colours outside [1, {self.k}]")

    @property
    def is_list(self) -> bool:
        return self.lists is not None

    def edge_list(self, i: int) -> frozenset[int]:
        if self.lists is None:
            return frozenset(range(1, self.k + 1))
        return self.lists[i]

    def all_lists(self) -> tuple[frozenset[int], ...]:
        return tuple(self.edge_list(i) for i in range(self.graph.m))


def edge_instance(g: Graph) -> ColoringInstance:
    return ColoringInstance(g, g.max_degree(), None)


# -- text format ----------------------------------------------------------


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_instance(text: str) -> ColoringInstance:
    """Parse the line-oriented instance format.

    ``p edge N M`` header, ``e U V`` edges (1-indexed), optional
    ``l U V C...`` colour lists and ``k K``; ``c`` lines are comments.
    """
    n = m_decl = None
    k = None
    edges: list[tuple[int, int]] = []
    eset: dict[tuple[int, int], int] = {}
    lists: dict[int, frozenset[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        kind = tok[0]
        if kind == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: second header")
            if len(tok) != 4 or tok[1] != "edge":
                raise ParseError(f"line {lineno}: header must be 'p edge N M'")
            n, m_decl = _ints(tok[2:], lineno)
            if n < 0 or m_decl < 0:
                raise ParseError(f"line {lineno}: negative size")
            continue
        if n is None:
            raise ParseError(f"line {lineno}: '{kind}' line before header")
        if kind == "e":
            if len(tok) != 3:
                raise ParseError(f"line {lineno}: edge line must be 'e U V'")
            u, v = _ints(tok[1:], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"line {lineno}: vertex out of range 1..{n}")
            if u == v:
                raise ParseError(f"line {lineno}: loop at vertex {u}")
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in eset:
                raise ParseError(f"line {lineno}: duplicate edge {u} {v}")
            eset[key] = len(edges)
            edges.append(key)
        elif kind == "l":
            if len(tok) < 3:
                raise ParseError(f"line {lineno}: list line must be 'l U V C...'")
            vals = _ints(tok[1:], lineno)
            u, v, cols = vals[0], vals[1], vals[2:]
            key = (min(u, v) - 1, max(u, v) - 1)
            if key not in eset:
                raise ParseError(f"line {lineno}: list for undeclared edge {u} {v}")
            i = eset[key]
            if i in lists:
                raise ParseError(f"line {lineno}: second list for edge {u} {v}")
            if len(set(cols)) != len(cols):
                raise ParseError(f"line {lineno}: repeated colour in list")
            lists[i] = frozenset(cols)
        elif kind == "k":
            if len(tok) != 2:
                raise ParseError(f"line {lineno}: 'k K' expected")
            if k is not None:
                raise ParseError(f"line {lineno}: second k line")
            (k,) = _ints(tok[1:], lineno)
            if k < 0:
                raise ParseError(f"line {lineno}: negative k")
        else:
            raise ParseError(f"line {lineno}: unknown line type {kind!r}")
    if n is None:
        raise ParseError("missing 'p edge N M' header")
    if len(edges) != m_decl:
        raise ParseError(f"header declares {m_decl} edges but {len(edges)} were given")
    g = Graph(n, edges)
    if not lists and k is None:
        return edge_instance(g)
    if k is None:
        k = max((c for lst in lists.values() for c in lst), default=0)
    full = frozenset(range(1, k + 1))
    all_lists = []
    for i in range(g.m):
        lst = lists.get(i, full)
        bad = [c for c in lst if not 1 <= c <= k]
        if bad:
            u, v = g.edges[i]
            raise ParseError(f"edge {u + 1} {v + 1}: colours {sorted(bad)} outside [1, {k}]")
        all_lists.append(lst)
    return ColoringInstance(g, k, tuple(all_lists))


def read_instance(path) -> ColoringInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def format_instance(inst: ColoringInstance | Graph, comment: str | None = None) -> str:
    if isinstance(inst, Graph):
        inst = edge_instance(inst)
    g = inst.graph
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    if inst.lists is not None:
        lines.append(f"k {inst.k}")
        for (u, v), lst in zip(g.edges, inst.lists):
            lines.append(" ".join(["l", str(u + 1), str(v + 1)] + [str(c) for c in sorted(lst)]))
    return "\n".join(lines) + "\n"


# -- peeling --------------------------------------------------------------


@dataclass
class PeelResult:
    """Outcome of deleting unit-degree vertices to a fixed point.

    ``core`` lists the surviving vertices of the input graph; ``g_new`` is
    the induced subgraph on them (relabelled densely, ``core[i]`` is the
    original vertex ``i``).  Each deleted tree appears in ``trees`` as a
    sorted vertex list with its attachment ``(core vertex, connecting edge)``
    in ``attach``; in the tree case ``attach`` entries are ``None``.
    """

    graph: Graph
    core: list[int]
    g_new: Graph
    core_edges: list[int]
    deleted: list[int]
    trees: list[list[int]] = field(default_factory=list)
    attach: list[tuple[int, int] | None] = field(default_factory=list)

    @property
    def is_tree_case(self) -> bool:
        return self.g_new.m == 0

    @property
    def n1(self) -> int:
        return len(self.deleted)


def peel_unit_degree(g: Graph) -> PeelResult:
    """Strip degree-1 vertices until none remain; ``g`` should be connected."""
    deg = g.degrees()
    alive = [True] * g.n
    queue = deque(v for v in range(g.n) if deg[v] == 1)
    removed_edges = 0
    while queue:
        v = queue.popleft()
        if not alive[v] or deg[v] != 1:
            continue
        alive[v] = False
        removed_edges += 1
        for w, _ in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    queue.append(w)
    core = [v for v in range(g.n) if alive[v] and deg[v] > 0]
    if not core:
        # tree case (or edgeless): nothing with degree >= 2 survives
        core = []
    g_new, _, core_edges = g.induced(core)
    deleted = [v for v in range(g.n) if v not in set(core)]
    res = PeelResult(g, core, g_new, core_edges, deleted)
    if not core:
        for comp in _components_within(g, deleted):
            res.trees.append(comp)
            res.attach.append(None)
        return res
    core_set = set(core)
    for comp in _components_within(g, deleted):
        links = [(w, i) for v in comp for w, i in g.adj[v] if w in core_set]
        anchors = {w for w, _ in links}
        assert len(anchors) == 1 and len(links) == 1, (
            f"deleted tree {comp} attaches to {sorted(anchors)} via {len(links)} edges")
        res.trees.append(comp)
        res.attach.append(links[0])
    return res


def _components_within(g: Graph, vertices: Iterable[int]) -> list[list[int]]:
    inside = set(vertices)
    seen: set[int] = set()
    out = []
    for s in sorted(inside):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, _ in g.adj[x]:
                if y in inside and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def star_decomposition(p: PeelResult) -> dict[int, list[int]]:
    """Pendant edges per core vertex (as edge indices of ``p.graph``).

    Every deleted component must already be a single vertex; the keys are
    core vertices of ``p.graph`` and every core vertex has an entry.
    """
    stars: dict[int, list[int]] = {v: [] for v in p.core}
    for comp, att in zip(p.trees, p.attach):
        if len(comp) != 1 or att is None:
            raise ValueError(f"deleted component {comp} is not a single pendant vertex; prune first")
        stars[att[0]].append(att[1])
    for v in stars:
        stars[v].sort()
    return stars


# -- bipartite matching ---------------------------------------------------


def max_bipartite_matching(n_left: int, adj: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Kuhn's augmenting-path matching.

    ``adj[i]`` lists the right vertices allowed for left vertex ``i``.
    Returns the matching size and, per left vertex, its partner or -1.
    """
    match_right: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for r in adj[i]:
            if r in seen:
                continue
            seen.add(r)
            if r not in match_right or augment(match_right[r], seen):
                match_right[r] = i
                return True
        return False

    size = 0
    for i in range(n_left):
        if augment(i, set()):
            size += 1
    left = [-1] * n_left
    for r, i in match_right.items():
        left[i] = r
    return size, left
