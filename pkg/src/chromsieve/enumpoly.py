"""The matching-enumerating polynomial P(X, Y) = Pf(B A B^T) as an oracle.

Rows of B are grouped by vertex (deg(v) rows for v) and its columns by
vertex copy ``(v, i)`` for colours i = 1..k.  A is block diagonal over
colours with ``A[(u, i), (w, i)] = x_e y_{e,i}`` whenever ``i`` is in the
list of ``e = {u, w}``.  The Y values are fixed at random when the context
is built, so the oracle is a polynomial in the edge variables only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import _kernels as K
from . import field as F
from . import linalg
from .graph import ColoringInstance, Graph
from .linalg import MatrixF
from .matroid import MatroidRep, extension_matroid, uniform_rep
from .polyoracle import SparsePoly, symbolic_pfaffian
from .sieve import EvalCounter, EvalOracle


@dataclass(frozen=True)
class EnumerationContext:
    graph: Graph
    k: int
    lists: tuple[frozenset[int], ...]
    reps: tuple[MatroidRep, ...]
    y: np.ndarray                      # m x k, zero where the colour is not listed
    row_offset: tuple[int, ...]
    _kernel: tuple

    @property
    def dim(self) -> int:
        return 2 * self.graph.m

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(f"x{i}" for i in range(self.graph.m))

    def kernel_args(self) -> tuple:
        return self._kernel

    # -- explicit matrices (for checks and debugging) ------------------------
    def B(self) -> MatrixF:
        return linalg.block_diag(*[r.array for r in self.reps])

    def A(self, x: Sequence[int]) -> MatrixF:
        g, k = self.graph, self.k
        a = np.zeros((g.n * k, g.n * k), dtype=np.uint64)
        for e, (u, w) in enumerate(g.edges):
            for i in range(k):
                if self.y[e, i]:
                    v = F.mul(int(x[e]), int(self.y[e, i]))
                    a[u * k + i, w * k + i] = a[w * k + i, u * k + i] = v
        return MatrixF(a)

    def evaluate_direct(self, x: Sequence[int]) -> int:
        """Pf(B A B^T) assembled literally; slow reference for the kernel path."""
        b = self.B()
        return linalg.pfaffian(b @ self.A(x) @ b.T)

    # -- oracle ---------------------------------------------------------------
    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        pts = np.ascontiguousarray(points, dtype=np.uint64).reshape(-1, self.graph.m)
        return K.pf_points(*self._kernel, pts)

    def evaluate(self, x: Sequence[int] | Mapping[int, int]) -> int:
        if isinstance(x, Mapping):
            x = [x[e] for e in range(self.graph.m)]
        return int(self.evaluate_many(np.array([x], dtype=np.uint64))[0])

    def oracle(self, counter: EvalCounter | None = None) -> EvalOracle:
        """P over the edge indices 0..m-1 (homogeneous of degree m)."""
        return EvalOracle.base(tuple(range(self.graph.m)), self.evaluate_many, self.graph.m, counter)


def evaluate_P(ctx: EnumerationContext, x) -> int:
    return ctx.evaluate(x)


def _edge_blocks(graph: Graph, reps: Sequence[MatroidRep], y: np.ndarray):
    offs, off = [], 0
    for r in reps:
        offs.append(off)
        off += r.rank
    e_ru, e_rw, e_du, e_dw, e_off, chunks = [], [], [], [], [], []
    pos = 0
    for e, (u, w) in enumerate(graph.edges):
        bu, bw = reps[u].array, reps[w].array
        scaled = K.mul_arrays(np.ascontiguousarray(np.broadcast_to(y[e][None, :], bw.shape)), np.ascontiguousarray(bw))
        c = K.matmul(np.ascontiguousarray(bu), np.ascontiguousarray(scaled.T))
        e_ru.append(offs[u])
        e_rw.append(offs[w])
        e_du.append(bu.shape[0])
        e_dw.append(bw.shape[0])
        e_off.append(pos)
        pos += c.size
        chunks.append(c.ravel())
    blocks = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.uint64)
    as64 = lambda v: np.array(v, dtype=np.int64)
    kernel = (off, as64(e_ru), as64(e_rw), as64(e_du), as64(e_dw), as64(e_off),
              np.ascontiguousarray(blocks, dtype=np.uint64))
    return tuple(offs), kernel


def build_context(inst: ColoringInstance, mode: str, rng: np.random.Generator,
                  stars: Mapping[int, Sequence[Sequence[int]]] | None = None) -> EnumerationContext:
    """Assemble B and the random Y values.

    ``mode="edge"`` uses the uniform matroid of rank deg(v) on each vertex's
    colour copies.  ``mode="list"`` uses the extension matroid of the vertex's
    pendant star, given in ``stars`` as colour lists per pendant edge
    (vertices missing from ``stars`` have an empty star).  Extension matroid
    failures propagate as :class:`~chromsieve.matroid.InfeasibleError`.
    """
    g, k = inst.graph, inst.k
    colours = tuple(range(1, k + 1))
    lists = inst.all_lists()
    if mode == "edge":
        reps = [uniform_rep(colours, g.degree(v)) for v in range(g.n)]
    elif mode == "list":
        stars = stars or {}
        reps = []
        for v in range(g.n):
            if g.degree(v) > k:
                raise ValueError(f"vertex {v} has degree above k = {k}")
            reps.append(extension_matroid(stars.get(v, ()), k, g.degree(v), rng))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    y = np.zeros((g.m, k), dtype=np.uint64)
    for e in range(g.m):
        for c in sorted(lists[e]):
            y[e, c - 1] = F.random_nonzero(rng)
    offs, kernel = _edge_blocks(g, reps, y)
    y.setflags(write=False)
    return EnumerationContext(g, k, lists, tuple(reps), y, offs, kernel)


def symbolic_P(ctx: EnumerationContext, cap: int = 12) -> SparsePoly:
    """P expanded over the edge variables (Y folded into coefficients)."""
    g = ctx.graph
    names = ctx.variables
    n = ctx.dim
    zero = SparsePoly(names)
    mat = [[zero] * n for _ in range(n)]
    args = ctx.kernel_args()
    _, e_ru, e_rw, e_du, e_dw, e_off, blocks = args
    for e in range(g.m):
        xe = SparsePoly.var(names[e], names)
        for a in range(int(e_du[e])):
            for b in range(int(e_dw[e])):
                c = int(blocks[int(e_off[e]) + a * int(e_dw[e]) + b])
                if c:
                    p = xe.scale(c)
                    mat[int(e_ru[e]) + a][int(e_rw[e]) + b] = p
                    mat[int(e_rw[e]) + b][int(e_ru[e]) + a] = p
    return symbolic_pfaffian(mat, cap=cap)
