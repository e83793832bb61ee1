"""Sparse multivariate polynomials over GF(2^64), used as a symbolic oracle.

Everything here is exact and deliberately simple.  It expands small
Pfaffians and determinants in full so that the evaluation-based sieves can
be checked against ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from . import _kernels as K
from . import field as F

TERM_CAP = 10**6
SYMBOLIC_DIM_CAP = 12

Exps = tuple[int, ...]


class PolyCapError(ValueError):
    """An oracle size cap was exceeded."""


@dataclass(frozen=True)
class MonomialView:
    exponents: Exps

    @cached_property
    def supp(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e)

    @cached_property
    def osupp(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e % 2)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def is_multilinear(self) -> bool:
        return all(e <= 1 for e in self.exponents)


class SparsePoly:
    """Map from dense exponent vectors to nonzero coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[Hashable], terms: Mapping[Exps, int] | None = None):
        self.vars: tuple = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable names")
        clean: dict[Exps, int] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.vars):
                raise ValueError("exponent vector length does not match variable count")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) ^ c
                if not clean[exps]:
                    del clean[exps]
        if len(clean) > TERM_CAP:
            raise PolyCapError(f"term count {len(clean)} exceeds cap {TERM_CAP}")
        self.terms: dict[Exps, int] = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[Hashable] = ()) -> "SparsePoly":
        return cls(variables)

    @classmethod
    def const(cls, c: int, variables: Sequence[Hashable] = ()) -> "SparsePoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: Hashable, variables: Sequence[Hashable] | None = None) -> "SparsePoly":
        variables = tuple(variables) if variables is not None else (name,)
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def monomial(cls, variables: Sequence[Hashable], exps: Sequence[int], coeff: int = 1) -> "SparsePoly":
        return cls(variables, {tuple(exps): coeff})

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def monomials(self) -> list[MonomialView]:
        return [MonomialView(e) for e in sorted(self.terms)]

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def with_vars(self, variables: Sequence[Hashable]) -> "SparsePoly":
        """Re-express over a superset ordering of the variables."""
        variables = tuple(variables)
        pos = {v: i for i, v in enumerate(variables)}
        missing = [v for v in self.vars if v not in pos]
        if missing:
            raise ValueError(f"variables {missing} missing from target ordering")
        idx = [pos[v] for v in self.vars]
        out: dict[Exps, int] = {}
        for exps, c in self.terms.items():
            e = [0] * len(variables)
            for i, d in zip(idx, exps):
                e[i] = d
            out[tuple(e)] = c
        return SparsePoly(variables, out)

    def _aligned(self, other: "SparsePoly") -> tuple["SparsePoly", "SparsePoly"]:
        if self.vars == other.vars:
            return self, other
        union = self.vars + tuple(v for v in other.vars if v not in set(self.vars))
        return self.with_vars(union), other.with_vars(union)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        a, b = self._aligned(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e, 0) ^ c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparsePoly(a.vars, out)

    __sub__ = __add__

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, int):
            return self.scale(other)
        a, b = self._aligned(other)
        out: dict[Exps, int] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) ^ F.mul(c1, c2)
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
            if len(out) > TERM_CAP:
                raise PolyCapError(f"term count exceeds cap {TERM_CAP}")
        return SparsePoly(a.vars, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "SparsePoly":
        if not c:
            return SparsePoly(self.vars)
        return SparsePoly(self.vars, {e: F.mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "SparsePoly":
        result = SparsePoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- evaluation and substitution ----------------------------------
    def _exp_array(self) -> tuple[np.ndarray, np.ndarray]:
        keys = sorted(self.terms)
        exps = np.array(keys, dtype=np.int64).reshape(len(keys), len(self.vars))
        coeffs = np.array([self.terms[k] for k in keys], dtype=np.uint64)
        return exps, coeffs

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        pts = np.ascontiguousarray(points, dtype=np.uint64)
        if pts.ndim != 2:
            pts = pts.reshape(-1, len(self.vars))
        if not self.terms:
            return np.zeros(pts.shape[0], dtype=np.uint64)
        exps, coeffs = self._exp_array()
        return K.poly_eval(exps, coeffs, pts)

    def evaluate(self, assignment: Mapping[Hashable, int] | Sequence[int]) -> int:
        if isinstance(assignment, Mapping):
            vals = [int(assignment[v]) for v in self.vars]
        else:
            vals = [int(v) for v in assignment]
        total = 0
        for exps, c in self.terms.items():
            t = c
            for x, e in zip(vals, exps):
                if e:
                    t = F.mul(t, F.power(x, e))
            total ^= t
        return total

    def substitute(self, assignment: Mapping[Hashable, int]) -> "SparsePoly":
        """Fix some variables to field values; the rest remain symbolic."""
        keep = [i for i, v in enumerate(self.vars) if v not in assignment]
        fixed = [(i, int(assignment[v])) for i, v in enumerate(self.vars) if v in assignment]
        out: dict[Exps, int] = {}
        for exps, c in self.terms.items():
            for i, x in fixed:
                if exps[i]:
                    c = F.mul(c, F.power(x, exps[i]))
            if c:
                e = tuple(exps[i] for i in keep)
                v = out.get(e, 0) ^ c
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return SparsePoly([self.vars[i] for i in keep], out)

    def coefficient_of(self, monomial_vars: Iterable[Hashable]) -> "SparsePoly":
        """Coefficient of prod_{x in T} x, as a polynomial over the other variables."""
        tset = set(monomial_vars)
        idx = [i for i, v in enumerate(self.vars) if v in tset]
        if len(idx) != len(tset):
            raise ValueError("unknown variables in T")
        keep = [i for i, v in enumerate(self.vars) if v not in tset]
        out: dict[Exps, int] = {}
        for exps, c in self.terms.items():
            if all(exps[i] == 1 for i in idx):
                out[tuple(exps[i] for i in keep)] = c
        return SparsePoly([self.vars[i] for i in keep], out)

    def render(self) -> str:
        """Canonical text: terms sorted by exponent vector, hex coefficients."""
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            mono = "*".join(
                f"{v}^{e}" if e > 1 else str(v) for v, e in zip(self.vars, exps) if e
            )
            c = F.to_hex(self.terms[exps])
            parts.append(f"{c}*{mono}" if mono else c)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SparsePoly({self.render()})"


def poly_add(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    return p + q


def poly_mul(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    return p * q


def _unify(matrix: Sequence[Sequence[SparsePoly]]) -> tuple[list[list[SparsePoly]], tuple]:
    variables: list = []
    seen = set()
    for row in matrix:
        for p in row:
            for v in p.vars:
                if v not in seen:
                    seen.add(v)
                    variables.append(v)
    return [[p.with_vars(variables) for p in row] for row in matrix], tuple(variables)


def symbolic_pfaffian(matrix: Sequence[Sequence[SparsePoly]], cap: int = SYMBOLIC_DIM_CAP) -> SparsePoly:
    """Expand the matching sum of a skew-symmetric polynomial matrix."""
    n = len(matrix)
    if n > cap:
        raise PolyCapError(f"dimension {n} exceeds symbolic cap {cap}")
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    ent, variables = _unify(matrix)
    for i in range(n):
        if ent[i][i]:
            raise ValueError("diagonal entries must vanish")
        for j in range(i):
            if ent[i][j] != ent[j][i]:
                raise ValueError("matrix is not skew-symmetric")
    if n % 2:
        return SparsePoly(variables)

    @lru_cache(maxsize=None)
    def rec(mask: int) -> SparsePoly:
        if mask == 0:
            return SparsePoly.const(1, variables)
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        total = SparsePoly(variables)
        bits = rest
        while bits:
            low = bits & -bits
            j = low.bit_length() - 1
            bits ^= low
            if ent[i][j]:
                total = total + ent[i][j] * rec(rest & ~low)
        return total

    return rec((1 << n) - 1)


def symbolic_det(matrix: Sequence[Sequence[SparsePoly]], cap: int = SYMBOLIC_DIM_CAP) -> SparsePoly:
    """Determinant by cofactor expansion (no signs in characteristic two)."""
    n = len(matrix)
    if n > cap:
        raise PolyCapError(f"dimension {n} exceeds symbolic cap {cap}")
    ent, variables = _unify(matrix)

    @lru_cache(maxsize=None)
    def rec(row: int, used: int) -> SparsePoly:
        if row == n:
            return SparsePoly.const(1, variables)
        total = SparsePoly(variables)
        for j in range(n):
            if not used >> j & 1 and ent[row][j]:
                total = total + ent[row][j] * rec(row + 1, used | (1 << j))
        return total

    return rec(0, 0)


def has_monomial_divisible_by(p: SparsePoly, T: Iterable[Hashable]) -> bool:
    idx = [p.vars.index(v) for v in T]
    return any(all(e[i] >= 1 for i in idx) for e in p.terms)


def osupp_spans(p: SparsePoly, M) -> bool:
    """Does some monomial's odd support span the matroid ``M``?"""
    pos = {v: i for i, v in enumerate(p.vars)}
    cols = [pos[g] for g in M.ground]
    for exps in p.terms:
        odd = [j for j, i in enumerate(cols) if exps[i] % 2]
        if M.rank_of_positions(odd) == M.rank:
            return True
    return False


def random_sparse_poly(rng: np.random.Generator, variables: Sequence[Hashable], max_degree: int,
                       n_terms: int) -> SparsePoly:
    """Random polynomial with up to ``n_terms`` monomials of degree <= max_degree."""
    nv = len(variables)
    terms: dict[Exps, int] = {}
    for _ in range(n_terms):
        deg = int(rng.integers(0, max_degree + 1))
        e = [0] * nv
        for _ in range(deg):
            e[int(rng.integers(nv))] += 1
        terms[tuple(e)] = F.random_nonzero(rng)
    return SparsePoly(variables, terms)
