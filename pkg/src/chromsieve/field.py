"""Arithmetic in GF(2^64).

Elements are plain Python ints in ``[0, 2**64)``; bit ``i`` is the
coefficient of ``x**i``.  Reduction is modulo the fixed irreducible
polynomial ``x^64 + x^4 + x^3 + x + 1`` so every result is
bit-reproducible.

The functions here are the scalar reference implementation.  Array work
goes through the numba kernels in :mod:`chromsieve._kernels`, which must
agree with these bit for bit.
"""

from __future__ import annotations

import numpy as np

BITS = 64
MASK = (1 << BITS) - 1
# low part of the modulus: x^4 + x^3 + x + 1
POLY_LOW = 0x1B
MODULUS = (1 << BITS) | POLY_LOW
ORDER = 1 << BITS

ZERO = 0
ONE = 1


def _reduce(r: int) -> int:
    hi = r >> BITS
    lo = r & MASK
    # hi * (x^4 + x^3 + x + 1) spills at most 4 bits past 64; fold twice
    folded = hi ^ (hi << 1) ^ (hi << 3) ^ (hi << 4)
    spill = folded >> BITS
    folded ^= spill ^ (spill << 1) ^ (spill << 3) ^ (spill << 4)
    return (lo ^ folded) & MASK


def add(a: int, b: int) -> int:
    return a ^ b


def clmul(a: int, b: int) -> int:
    """Carryless product of two 64-bit values (up to 127 bits, unreduced)."""
    if a < b:
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def mul(a: int, b: int) -> int:
    return _reduce(clmul(a, b))


def square(a: int) -> int:
    return mul(a, a)


def power(a: int, e: int) -> int:
    if e < 0:
        return power(inv(a), -e)
    result = ONE
    while e:
        if e & 1:
            result = mul(result, a)
        a = mul(a, a)
        e >>= 1
    return result


def inv(a: int) -> int:
    """Multiplicative inverse, ``a^(2^64 - 2)``."""
    if a == 0:
        raise ZeroDivisionError("zero has no inverse in GF(2^64)")
    return power(a, ORDER - 2)


def div(a: int, b: int) -> int:
    return mul(a, inv(b))


def sqrt(a: int) -> int:
    """Unique square root ``a^(2^63)``, by 63 repeated squarings."""
    for _ in range(BITS - 1):
        a = mul(a, a)
    return a


def random_elem(rng: np.random.Generator) -> int:
    """Uniform element drawn from ``rng``."""
    return int(rng.integers(0, ORDER, dtype=np.uint64, endpoint=False))


def random_elems(rng: np.random.Generator, size) -> np.ndarray:
    return rng.integers(0, ORDER, size=size, dtype=np.uint64, endpoint=False)


def random_nonzero(rng: np.random.Generator) -> int:
    while True:
        a = random_elem(rng)
        if a:
            return a


def random_nonzero_elems(rng: np.random.Generator, size) -> np.ndarray:
    out = random_elems(rng, size)
    zero = out == 0
    while zero.any():
        out[zero] = random_elems(rng, int(zero.sum()))
        zero = out == 0
    return out


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for ``(seed, *key)``.

    Keys name the purpose of the draw (component, trial, stage ...), so the
    same seed always replays the same draws regardless of call order.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def to_hex(a: int) -> str:
    return f"0x{a:016x}"


def from_hex(s: str) -> int:
    a = int(s, 16)
    if not 0 <= a < ORDER:
        raise ValueError(f"{s!r} is not a GF(2^64) element")
    return a
