"""Monomial detection by evaluation: interpolation, inclusion-exclusion,
coefficient extraction, odd sieving and partition sieving.

All oracles work on batches: a ``(N, nvars)`` array of points in, ``N``
field values out.  Only base oracles count evaluations, so a composed
oracle reports how many times the underlying polynomial was evaluated.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from . import _kernels as K
from . import field as F
from .matroid import MatroidRep, PartitionSpec, partition_rep

MAX_LOG_COMBOS = 34


@dataclass
class EvalCounter:
    count: int = 0

    def add(self, n: int) -> None:
        self.count += int(n)


class EvalOracle:
    """Black-box polynomial: variables, a batch evaluator and a degree bound."""

    def __init__(self, variables: Sequence[Hashable], batch_fn: Callable[[np.ndarray], np.ndarray],
                 degree_bound: int, counter: EvalCounter | None = None):
        self.variables = tuple(variables)
        self._fn = batch_fn
        self.degree_bound = int(degree_bound)
        self.counter = counter if counter is not None else EvalCounter()

    @classmethod
    def base(cls, variables, fn, degree_bound, counter: EvalCounter | None = None) -> "EvalOracle":
        """Wrap a raw evaluator; every point it sees is counted."""
        counter = counter if counter is not None else EvalCounter()

        def counted(points):
            counter.add(points.shape[0])
            return fn(points)

        return cls(variables, counted, degree_bound, counter)

    @classmethod
    def from_poly(cls, p, counter: EvalCounter | None = None) -> "EvalOracle":
        return cls.base(p.vars, p.evaluate_many, p.degree(), counter)

    @property
    def arity(self) -> int:
        return len(self.variables)

    def eval_batch(self, points) -> np.ndarray:
        pts = np.ascontiguousarray(points, dtype=np.uint64)
        if pts.ndim != 2:
            pts = pts.reshape(-1, self.arity)
        if pts.shape[1] != self.arity:
            raise ValueError(f"points have {pts.shape[1]} coordinates, oracle has {self.arity}")
        if pts.shape[0] == 0:
            return np.zeros(0, dtype=np.uint64)
        return np.asarray(self._fn(pts), dtype=np.uint64)

    def __call__(self, assignment) -> int:
        if isinstance(assignment, dict):
            assignment = [assignment[v] for v in self.variables]
        return int(self.eval_batch(np.array([assignment], dtype=np.uint64))[0])


@dataclass
class SieveVerdict:
    found: bool
    evaluations: int
    value: int = 0
    seeds: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"found": self.found, "evaluations": self.evaluations,
                "value": F.to_hex(self.value), "seeds": self.seeds}


# -- field helpers ----------------------------------------------------------


def fmul(a, b) -> np.ndarray:
    """Elementwise field product with numpy broadcasting."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.uint64), np.asarray(b, dtype=np.uint64))
    return K.mul_arrays(np.ascontiguousarray(a), np.ascontiguousarray(b))


def xor_reduce(a: np.ndarray, axis: int) -> np.ndarray:
    return np.bitwise_xor.reduce(a, axis=axis)


def sample_points(count: int) -> list[int]:
    """The distinct nonzero interpolation points 1, 2, ..., count."""
    return list(range(1, count + 1))


def lagrange_at_zero(points: Sequence[int], values: Sequence[int]) -> int:
    """Value at 0 of the unique polynomial of degree < len(points) through the data."""
    total = 0
    for j, (pj, vj) in enumerate(zip(points, values)):
        vj = int(vj)
        if not vj:
            continue
        num = den = F.ONE
        for l, pl in enumerate(points):
            if l != j:
                num = F.mul(num, pl)
                den = F.mul(den, pl ^ pj)
        total ^= F.mul(vj, F.div(num, den))
    return total


def _divide_by_power(values: Sequence[int], points: Sequence[int], s: int) -> list[int]:
    return [F.div(int(v), F.power(p, s)) for v, p in zip(values, points)]


def interpolate_coeff(f: Callable[[np.ndarray], np.ndarray], degree_bound: int, target_power: int) -> int:
    """Coefficient of z^t of a univariate polynomial of degree <= d given by values."""
    d = int(degree_bound)
    if not 0 <= target_power <= d:
        raise ValueError("target power must lie in [0, degree_bound]")
    pts = np.array(sample_points(d + 1), dtype=np.uint64)
    vals = np.asarray(f(pts), dtype=np.uint64)
    aug = np.zeros((d + 1, d + 2), dtype=np.uint64)
    for j, p in enumerate(sample_points(d + 1)):
        v = F.ONE
        for i in range(d + 1):
            aug[j, i] = v
            v = F.mul(v, p)
        aug[j, d + 1] = vals[j]
    piv = K.rref_inplace(aug)
    assert piv.size == d + 1, "Vandermonde system on distinct points is invertible"
    return int(aug[target_power, d + 1])


# -- oracle transforms ------------------------------------------------------


def _positions(oracle: EvalOracle, labels: Iterable[Hashable]) -> list[int]:
    pos = {v: i for i, v in enumerate(oracle.variables)}
    out = []
    for lab in labels:
        if lab not in pos:
            raise ValueError(f"unknown variable {lab!r}")
        out.append(pos[lab])
    return out


def _subset_masks(t: int) -> np.ndarray:
    """Row s, column i: is element i in subset s (subsets in lexicographic mask order)."""
    s = np.arange(1 << t, dtype=np.int64)[:, None]
    return ((s >> np.arange(t, dtype=np.int64)[None, :]) & 1).astype(bool)


def ie_restrict(P: EvalOracle, T: Iterable[Hashable]) -> EvalOracle:
    """Oracle for the part of P whose monomials are divisible by every x in T."""
    idx = _positions(P, T)
    t = len(idx)
    if t == 0:
        return P
    masks = _subset_masks(t)

    def fn(points: np.ndarray) -> np.ndarray:
        n = points.shape[0]
        big = np.repeat(points[:, None, :], 1 << t, axis=1)
        for i, col in enumerate(idx):
            big[:, masks[:, i], col] = 0
        vals = P.eval_batch(big.reshape(-1, P.arity)).reshape(n, 1 << t)
        return xor_reduce(vals, 1)

    return EvalOracle(P.variables, fn, P.degree_bound, P.counter)


def coeff_extract(P: EvalOracle, T: Iterable[Hashable]) -> EvalOracle:
    """Oracle for the coefficient of prod_{x in T} x, over the other variables.

    T is replaced by z times a 0/1 pattern; the inclusion-exclusion sum keeps
    monomials using every x in T, so it is divisible by z^|T| and the
    quotient's value at z = 0 is the wanted coefficient.
    """
    T = list(T)
    idx = _positions(P, T)
    t = len(idx)
    keep = [i for i in range(P.arity) if i not in set(idx)]
    rest_vars = [P.variables[i] for i in keep]
    e = P.degree_bound - t
    if e < 0:
        return EvalOracle(rest_vars, lambda pts: np.zeros(pts.shape[0], dtype=np.uint64), 0, P.counter)
    sig = sample_points(e + 1)
    masks = _subset_masks(t)

    def fn(points: np.ndarray) -> np.ndarray:
        n = points.shape[0]
        big = np.zeros((n, 1 << t, e + 1, P.arity), dtype=np.uint64)
        big[:, :, :, keep] = points[:, None, None, :]
        for j, s in enumerate(sig):
            for i, col in enumerate(idx):
                big[:, :, j, col] = np.where(masks[:, i], 0, s)[None, :]
        vals = P.eval_batch(big.reshape(-1, P.arity)).reshape(n, 1 << t, e + 1)
        g = xor_reduce(vals, 1)
        out = np.empty(n, dtype=np.uint64)
        for r in range(n):
            out[r] = lagrange_at_zero(sig, _divide_by_power(g[r], sig, t))
        return out

    return EvalOracle(rest_vars, fn, e, P.counter)


# -- sieves -----------------------------------------------------------------


def sieve_draws(rng: np.random.Generator, nvars: int) -> tuple[np.ndarray, np.ndarray]:
    """Random evaluation point and column twist, always drawn in this order."""
    x = F.random_nonzero_elems(rng, nvars)
    twist = F.random_nonzero_elems(rng, nvars)
    return x, twist


def twisted_rep(rep: np.ndarray, twist: np.ndarray) -> np.ndarray:
    if rep.shape[0] == 0:
        return np.zeros(rep.shape, dtype=np.uint64)
    return fmul(rep, twist[None, :])


def _row_sums(rp: np.ndarray) -> np.ndarray:
    """For each mask S over rows, the XOR of rows not in S."""
    k, n = rp.shape
    out = np.zeros((1 << k, n), dtype=np.uint64)
    masks = _subset_masks(k)
    for s in range(1 << k):
        keep = ~masks[s]
        if keep.any():
            out[s] = xor_reduce(rp[keep], 0)
    return out


def odd_sieve(P: EvalOracle, M: MatroidRep, degree_bound: int, rng: np.random.Generator) -> SieveVerdict:
    """Is there a monomial of P whose odd support spans M?

    Each x_i becomes x_i (1 + w l_i(z)) with l_i the i-th twisted column of
    M as a linear form in z.  Summing over zero-patterns of z keeps the
    terms using every z_r; in characteristic two their w^k coefficient is
    the sum over odd-support k-sets of twisted k x k minors, which vanishes
    identically unless some odd support contains a basis.
    """
    if set(M.ground) != set(P.variables):
        raise ValueError("matroid ground set must equal the oracle's variables")
    rep = M.reorder(P.variables).array
    k, n = rep.shape
    d = int(degree_bound)
    start = P.counter.count
    x, twist = sieve_draws(rng, n)
    if k > d:
        return SieveVerdict(False, 0, 0)
    if k == 0:
        value = int(P.eval_batch(x[None, :])[0])
        return SieveVerdict(value != 0, P.counter.count - start, value)
    rp = twisted_rep(rep, twist)
    ells = _row_sums(rp)                         # (2^k, n)
    sig = sample_points(d - k + 1)
    sig_arr = np.array(sig, dtype=np.uint64)
    scaled = fmul(sig_arr[None, :, None], ells[:, None, :]) ^ np.uint64(1)   # (2^k, e+1, n)
    pts = fmul(x[None, None, :], scaled)
    vals = P.eval_batch(pts.reshape(-1, n)).reshape(1 << k, len(sig))
    g = xor_reduce(vals, 0)
    value = lagrange_at_zero(sig, _divide_by_power(g, sig, k))
    return SieveVerdict(value != 0, P.counter.count - start, value)


def partition_sieve(P: EvalOracle, spec: PartitionSpec, degree_bound: int,
                    rng: np.random.Generator) -> SieveVerdict:
    """Is there a monomial whose support is a basis of the partition matroid?

    P must be compatible with ``spec`` (degree exactly c_i >= 1 on part i);
    this is the caller's responsibility.  Runs the odd sieve against the
    partition matroid with every capacity lowered by one.
    """
    if any(c < 1 for c in spec.capacities):
        raise ValueError("partition sieving needs positive capacities")
    return odd_sieve(P, partition_rep(spec.reduced()), degree_bound, rng)


# -- accelerated full-monomial detection --------------------------------------


@dataclass(frozen=True)
class DetectionPlan:
    """Which edges are extracted and which are sieved for a dominating set."""

    v_prime: tuple[int, ...]
    e_prime: tuple[int, ...]
    extracted: tuple[int, ...]
    spec: PartitionSpec

    @property
    def sieve_rank(self) -> int:
        return len(self.e_prime) - len(self.v_prime)

    @property
    def log_combos(self) -> int:
        return len(self.extracted) + self.sieve_rank

    @property
    def evaluations(self) -> int:
        return (1 << self.log_combos) * (len(self.v_prime) + 1)


def plan_detection(graph, dom: Iterable[int]) -> DetectionPlan:
    dset = set(dom)
    v_prime = tuple(v for v in range(graph.n) if v not in dset)
    vp = set(v_prime)
    parts: dict[int, list[int]] = {v: [] for v in v_prime}
    e_prime, extracted = [], []
    for i, (u, w) in enumerate(graph.edges):
        if (u in dset) != (w in dset):
            e_prime.append(i)
            parts[u if u in vp else w].append(i)
        else:
            extracted.append(i)
    for v in v_prime:
        if not parts[v]:
            raise ValueError(f"vertex {v} is not dominated")
    spec = PartitionSpec([parts[v] for v in v_prime], [len(parts[v]) for v in v_prime])
    return DetectionPlan(v_prime, tuple(e_prime), tuple(extracted), spec)


def detect_full_monomial(ctx, dom, rng: np.random.Generator, *, fused: bool = True,
                         jobs: int = 1, counter: EvalCounter | None = None) -> SieveVerdict:
    """Does P = Pf(B A B^T) have a monomial using every edge variable?

    Edges with one end in the dominating set and one outside are sieved
    against the partition matroid of their outside endpoints; the other
    edges are extracted.  ``fused`` runs both stages in a single kernel over
    one auxiliary variable; the composed path chains the generic oracles and
    gives the same value for the same random draws.
    """
    verts = dom.vertices if hasattr(dom, "vertices") else dom
    plan = plan_detection(ctx.graph, verts)
    if plan.log_combos > MAX_LOG_COMBOS:
        raise ValueError(f"2^{plan.log_combos} sieve terms is beyond this solver's budget")
    counter = counter if counter is not None else EvalCounter()
    if not fused:
        P = ctx.oracle(counter)
        Q = coeff_extract(P, plan.extracted)
        verdict = partition_sieve(Q, plan.spec, len(plan.e_prime), rng)
        return verdict
    x, twist = sieve_draws(rng, len(plan.e_prime))
    rep = partition_rep(plan.spec.reduced()).reorder(plan.e_prime).array
    rp = np.ascontiguousarray(twisted_rep(rep, twist))
    sig = sample_points(len(plan.v_prime) + 1)
    total = 1 << plan.log_combos
    args = ctx.kernel_args() + (
        np.array(plan.extracted, dtype=np.int64),
        np.array(plan.e_prime, dtype=np.int64),
        np.ascontiguousarray(x),
        rp,
        np.array(sig, dtype=np.uint64),
    )
    jobs = max(1, min(int(jobs), total))
    bounds = [total * j // jobs for j in range(jobs + 1)]
    if jobs == 1:
        parts = [K.fused_phi(*args, 0, total)]
    else:
        with ThreadPoolExecutor(jobs) as pool:
            parts = list(pool.map(lambda j: K.fused_phi(*args, bounds[j], bounds[j + 1]), range(jobs)))
    phi = np.zeros(len(sig), dtype=np.uint64)
    for part in parts:
        phi ^= part
    counter.add(total * len(sig))
    value = lagrange_at_zero(sig, _divide_by_power(phi, sig, plan.log_combos))
    return SieveVerdict(value != 0, total * len(sig), value)
