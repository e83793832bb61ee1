"""Dense matrices over GF(2^64): determinant, rank and Pfaffian."""

from __future__ import annotations

from functools import lru_cache
from typing import Hashable, Sequence

import numpy as np

from . import _kernels as K
from . import field as F


class MatrixF:
    """Immutable dense matrix with optional row/column labels."""

    __slots__ = ("_a", "row_labels", "col_labels")

    def __init__(self, entries, row_labels: Sequence[Hashable] | None = None,
                 col_labels: Sequence[Hashable] | None = None):
        a = np.array(entries, dtype=np.uint64, copy=True)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("matrix entries must be two-dimensional")
        a.setflags(write=False)
        self._a = a
        if row_labels is not None and len(row_labels) != a.shape[0]:
            raise ValueError("row label count does not match row count")
        if col_labels is not None and len(col_labels) != a.shape[1]:
            raise ValueError("column label count does not match column count")
        self.row_labels = tuple(row_labels) if row_labels is not None else None
        self.col_labels = tuple(col_labels) if col_labels is not None else None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixF":
        return cls(np.zeros((rows, cols), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "MatrixF":
        return cls(np.eye(n, dtype=np.uint64))

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    def __getitem__(self, idx) -> int:
        return int(self._a[idx])

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixF) and np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash((self._a.shape, self._a.tobytes()))

    def __matmul__(self, other: "MatrixF") -> "MatrixF":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return MatrixF(K.matmul(self._a, other._a), self.row_labels, other.col_labels)

    def __add__(self, other: "MatrixF") -> "MatrixF":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return MatrixF(self._a ^ other._a, self.row_labels, self.col_labels)

    @property
    def T(self) -> "MatrixF":
        return MatrixF(self._a.T, self.col_labels, self.row_labels)

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "MatrixF":
        """Select rows/columns by position; labels follow their entries."""
        r = list(range(self.rows)) if rows is None else list(rows)
        c = list(range(self.cols)) if cols is None else list(cols)
        a = self._a[np.ix_(r, c)] if r and c else np.zeros((len(r), len(c)), dtype=np.uint64)
        rl = tuple(self.row_labels[i] for i in r) if self.row_labels else None
        cl = tuple(self.col_labels[j] for j in c) if self.col_labels else None
        return MatrixF(a, rl, cl)

    def principal(self, idx: Sequence[int]) -> "MatrixF":
        return self.submatrix(idx, idx)

    def select_cols(self, labels: Sequence[Hashable]) -> "MatrixF":
        if self.col_labels is None:
            raise ValueError("matrix has no column labels")
        pos = {lab: j for j, lab in enumerate(self.col_labels)}
        return self.submatrix(None, [pos[lab] for lab in labels])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_skew(self) -> bool:
        """Skew-symmetric in characteristic two: symmetric with zero diagonal."""
        a = self._a
        return self.is_square() and np.array_equal(a, a.T) and not np.any(np.diagonal(a))

    def hex_dump(self) -> str:
        return hex_dump(self)

    def __repr__(self) -> str:
        return f"MatrixF({self.rows}x{self.cols})"


def _arr(a) -> np.ndarray:
    return a.array if isinstance(a, MatrixF) else np.asarray(a, dtype=np.uint64)


def det(a) -> int:
    m = _arr(a)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"determinant needs a square matrix, got shape {m.shape}")
    return int(K.det_inplace(np.array(m, dtype=np.uint64)))


def rank(a) -> int:
    m = _arr(a)
    if m.size == 0:
        return 0
    return int(K.rank_inplace(np.array(m, dtype=np.uint64)))


def rref(a) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    m = np.array(_arr(a), dtype=np.uint64)
    if m.size == 0:
        return m.reshape(0, m.shape[1] if m.ndim == 2 else 0), np.zeros(0, dtype=np.int64)
    piv = K.rref_inplace(m)
    return m[: piv.size], piv


def _check_skew(m: np.ndarray) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"Pfaffian needs a square matrix, got shape {m.shape}")
    if not np.array_equal(m, m.T) or np.any(np.diagonal(m)):
        raise ValueError("matrix is not skew-symmetric (symmetric with zero diagonal)")


def pfaffian(a, check: bool = True) -> int:
    """Pf A computed as the square root of det A."""
    m = _arr(a)
    if check:
        _check_skew(m)
    if m.shape[0] % 2:
        return 0
    return F.sqrt(det(m))


PF_COMBINATORIAL_CAP = 12


def pfaffian_combinatorial(a, cap: int = PF_COMBINATORIAL_CAP) -> int:
    """Pf A as the explicit sum over perfect matchings of the index set."""
    m = _arr(a)
    _check_skew(m)
    n = m.shape[0]
    if n > cap:
        raise ValueError(f"dimension {n} exceeds the combinatorial cap {cap}")
    if n % 2:
        return 0
    ent = [[int(v) for v in row] for row in m]

    @lru_cache(maxsize=None)
    def rec(mask: int) -> int:
        if mask == 0:
            return F.ONE
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        total = 0
        j_bits = rest
        while j_bits:
            low = j_bits & -j_bits
            j = low.bit_length() - 1
            j_bits ^= low
            if ent[i][j]:
                total ^= F.mul(ent[i][j], rec(rest & ~low))
        return total

    return rec((1 << n) - 1)


def block_diag(*blocks) -> MatrixF:
    arrs = [_arr(b) for b in blocks]
    rows = sum(b.shape[0] for b in arrs)
    cols = sum(b.shape[1] for b in arrs)
    out = np.zeros((rows, cols), dtype=np.uint64)
    r = c = 0
    for b in arrs:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return MatrixF(out)


def random_matrix(rng: np.random.Generator, rows: int, cols: int) -> MatrixF:
    return MatrixF(F.random_elems(rng, (rows, cols)))


def random_skew(rng: np.random.Generator, n: int) -> MatrixF:
    a = np.triu(F.random_elems(rng, (n, n)), 1)
    return MatrixF(a ^ a.T)


def hex_dump(a) -> str:
    m = _arr(a)
    return "\n".join(" ".join(F.to_hex(int(v)) for v in row) for row in m)
