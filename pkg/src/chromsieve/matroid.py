"""Linear matroid representations and the constructions built from them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import field as F
from . import linalg
from .linalg import MatrixF


class InfeasibleError(ValueError):
    """A requested matroid does not exist (the instance is a NO)."""


class MatroidRep:
    """An r x n matrix whose column sets give the independent sets.

    The row count is the rank; constructions that could leave redundant rows
    row-reduce first.
    """

    __slots__ = ("matrix", "ground", "_pos")

    def __init__(self, rep, ground: Sequence[Hashable]):
        self.matrix = rep if isinstance(rep, MatrixF) else MatrixF(rep)
        self.ground = tuple(ground)
        if len(self.ground) != self.matrix.cols:
            raise ValueError("ground label count does not match column count")
        if len(set(self.ground)) != len(self.ground):
            raise ValueError("duplicate ground labels")
        self._pos = {g: i for i, g in enumerate(self.ground)}

    @property
    def array(self) -> np.ndarray:
        return self.matrix.array

    @property
    def rank(self) -> int:
        return self.matrix.rows

    @property
    def size(self) -> int:
        return self.matrix.cols

    def positions(self, labels: Iterable[Hashable]) -> list[int]:
        return [self._pos[g] for g in labels]

    def rank_of_positions(self, cols: Sequence[int]) -> int:
        if not cols or self.rank == 0:
            return 0
        return linalg.rank(self.array[:, list(cols)])

    def rank_of(self, labels: Iterable[Hashable]) -> int:
        return self.rank_of_positions(self.positions(labels))

    def is_independent(self, labels: Iterable[Hashable]) -> bool:
        labels = list(labels)
        return len(set(labels)) == len(labels) and self.rank_of(labels) == len(labels)

    def spans(self, labels: Iterable[Hashable]) -> bool:
        return self.rank_of(labels) == self.rank

    def is_basis(self, labels: Iterable[Hashable]) -> bool:
        labels = list(labels)
        return len(labels) == self.rank and self.is_independent(labels)

    def reorder(self, ground: Sequence[Hashable]) -> "MatroidRep":
        """Same matroid with columns listed in the given label order."""
        if set(ground) != set(self.ground) or len(ground) != len(self.ground):
            raise ValueError("reorder needs a permutation of the ground set")
        return MatroidRep(self.matrix.submatrix(None, self.positions(ground)), ground)

    def hex_dump(self) -> str:
        head = " ".join(str(g) for g in self.ground)
        return f"rank {self.rank} on [{head}]\n{self.matrix.hex_dump()}"

    def __repr__(self) -> str:
        return f"MatroidRep(rank={self.rank}, n={self.size})"


@dataclass(frozen=True)
class PartitionSpec:
    parts: tuple[tuple[Hashable, ...], ...]
    capacities: tuple[int, ...]

    def __init__(self, parts: Sequence[Sequence[Hashable]], capacities: Sequence[int]):
        parts_t = tuple(tuple(p) for p in parts)
        caps = tuple(int(c) for c in capacities)
        if len(parts_t) != len(caps):
            raise ValueError("one capacity per part is required")
        flat = [g for p in parts_t for g in p]
        if len(set(flat)) != len(flat):
            raise ValueError("parts must be disjoint")
        if any(c < 0 for c in caps):
            raise ValueError("capacities must be nonnegative")
        object.__setattr__(self, "parts", parts_t)
        object.__setattr__(self, "capacities", caps)

    @property
    def ground(self) -> tuple:
        return tuple(g for p in self.parts for g in p)

    @property
    def rank(self) -> int:
        return sum(self.capacities)

    def reduced(self) -> "PartitionSpec":
        """Same parts with every capacity lowered by one."""
        return PartitionSpec(self.parts, [c - 1 for c in self.capacities])


def vandermonde(r: int, n: int) -> np.ndarray:
    """r x n Vandermonde matrix on the field points 1, 2, ..., n."""
    out = np.zeros((r, n), dtype=np.uint64)
    for j in range(n):
        x = j + 1
        v = F.ONE
        for i in range(r):
            out[i, j] = v
            v = F.mul(v, x)
    return out


def uniform_rep(ground: Sequence[Hashable], r: int, rng: np.random.Generator | None = None) -> MatroidRep:
    """Uniform matroid U(r, n); deterministic, ``rng`` is accepted for symmetry."""
    ground = tuple(ground)
    if not 0 <= r <= len(ground):
        raise ValueError(f"rank {r} out of range for {len(ground)} elements")
    return MatroidRep(vandermonde(r, len(ground)), ground)


def partition_rep(spec: PartitionSpec, rng: np.random.Generator | None = None) -> MatroidRep:
    for part, c in zip(spec.parts, spec.capacities):
        if c > len(part):
            raise ValueError(f"capacity {c} exceeds part size {len(part)}")
    return direct_sum([uniform_rep(p, c) for p, c in zip(spec.parts, spec.capacities)])


def direct_sum(reps: Sequence[MatroidRep]) -> MatroidRep:
    ground = [g for m in reps for g in m.ground]
    if len(set(ground)) != len(ground):
        raise ValueError("direct sum needs disjoint ground sets")
    return MatroidRep(linalg.block_diag(*[m.array for m in reps]), ground)


def transversal_rep(left: Sequence[Hashable], right: Sequence[Hashable],
                    edges: Iterable[tuple[Hashable, Hashable]], rng: np.random.Generator) -> MatroidRep:
    """Transversal matroid on ``left`` for the bipartite graph ``edges``.

    Random entries make this correct with high probability; a set reported
    independent always has a saturating matching.
    """
    left = tuple(left)
    right = tuple(right)
    lpos = {g: j for j, g in enumerate(left)}
    rpos = {g: i for i, g in enumerate(right)}
    a = np.zeros((len(right), len(left)), dtype=np.uint64)
    for l, r in sorted(set(edges), key=lambda e: (lpos[e[0]], rpos[e[1]])):
        a[rpos[r], lpos[l]] = F.random_nonzero(rng)
    reduced, _ = linalg.rref(a)
    return MatroidRep(reduced, left)


def dual_rep(m: MatroidRep) -> MatroidRep:
    r, n = m.rank, m.size
    reduced, piv = linalg.rref(m.array) if r else (np.zeros((0, n), dtype=np.uint64), np.zeros(0, dtype=np.int64))
    if reduced.shape[0] != r:
        raise ValueError("dual needs a representation with full row rank")
    pivots = [int(p) for p in piv]
    free = [j for j in range(n) if j not in set(pivots)]
    out = np.zeros((n - r, n), dtype=np.uint64)
    for i, j in enumerate(free):
        out[i, j] = F.ONE
    if r:
        d = reduced[:, free]  # r x (n - r)
        for t, p in enumerate(pivots):
            out[:, p] = d[t, :]
    return MatroidRep(out, m.ground)


def truncate_rep(m: MatroidRep, h: int, rng: np.random.Generator) -> MatroidRep:
    if not 0 <= h <= m.rank:
        raise ValueError(f"truncation rank {h} exceeds matroid rank {m.rank}")
    if h == m.rank:
        return m
    mix = linalg.random_matrix(rng, h, m.rank)
    return MatroidRep(mix @ m.matrix, m.ground)


def extension_matroid(star_lists: Sequence[Iterable[int]], k: int, d_new: int,
                      rng: np.random.Generator) -> MatroidRep:
    """Matroid on colours 1..k whose bases leave the pendant star colourable.

    ``star_lists`` holds the colour list of each pendant edge at the vertex.
    A size-``d_new`` colour set is a basis when the star can be list-coloured
    without using any of those colours.
    """
    colours = tuple(range(1, k + 1))
    star = [frozenset(int(c) for c in lst) for lst in star_lists]
    for lst in star:
        if not lst <= set(colours):
            raise ValueError("star list has colours outside [k]")
    edges = [(c, j) for j, lst in enumerate(star) for c in lst]
    trans = transversal_rep(colours, range(len(star)), edges, rng)
    if trans.rank < len(star):
        raise InfeasibleError("pendant star admits no list colouring")
    dual = dual_rep(trans)
    if d_new > dual.rank:
        raise InfeasibleError(
            f"need rank {d_new} but only {dual.rank} colours remain free at the vertex")
    return truncate_rep(dual, d_new, rng)
