"""Compiled GF(2^64) kernels.

Scalars are ``uint64``.  Multiplication uses the PCLMULQDQ instruction
when the host has it and a shift-xor loop otherwise; both reduce modulo
``x^64 + x^4 + x^3 + x + 1`` and give identical bits.
"""

from __future__ import annotations

import os

import numpy as np
from llvmlite import ir
from numba import njit, types, uint64
from numba.core import cgutils
from numba.extending import intrinsic


def _host_has_pclmul() -> bool:
    if os.environ.get("CHROMSIEVE_NO_CLMUL"):
        return False
    try:
        import llvmlite.binding as llvm

        return bool(llvm.get_host_cpu_features().get("pclmul", False))
    except Exception:
        return False


HAVE_PCLMUL = _host_has_pclmul()

_ONE = uint64(1)


@njit(inline="always")
def _reduce(lo, hi):
    spill = (hi >> uint64(63)) ^ (hi >> uint64(61)) ^ (hi >> uint64(60))
    lo ^= hi ^ (hi << uint64(1)) ^ (hi << uint64(3)) ^ (hi << uint64(4))
    lo ^= spill ^ (spill << uint64(1)) ^ (spill << uint64(3)) ^ (spill << uint64(4))
    return lo


@njit(cache=True)
def mul_sw(a, b):
    lo = uint64(0)
    hi = uint64(0)
    for i in range(64):
        if (b >> uint64(i)) & _ONE:
            lo ^= a << uint64(i)
            if i:
                hi ^= a >> uint64(64 - i)
    return _reduce(lo, hi)


@intrinsic
def _clmul(typingctx, a, b):
    sig = types.UniTuple(types.uint64, 2)(types.uint64, types.uint64)

    def codegen(context, builder, signature, args):
        i32 = ir.IntType(32)
        i64 = ir.IntType(64)
        vty = ir.VectorType(i64, 2)
        zero64 = ir.Constant(i64, 0)

        def widen(x):
            v = builder.insert_element(ir.Constant(vty, ir.Undefined), x, ir.Constant(i32, 0))
            return builder.insert_element(v, zero64, ir.Constant(i32, 1))

        fnty = ir.FunctionType(vty, [vty, vty, ir.IntType(8)])
        fn = cgutils.get_or_insert_function(builder.module, fnty, "llvm.x86.pclmulqdq")
        r = builder.call(fn, [widen(args[0]), widen(args[1]), ir.Constant(ir.IntType(8), 0)])
        lo = builder.extract_element(r, ir.Constant(i32, 0))
        hi = builder.extract_element(r, ir.Constant(i32, 1))
        return context.make_tuple(builder, signature.return_type, [lo, hi])

    return sig, codegen


@njit(cache=True)
def mul_hw(a, b):
    lo, hi = _clmul(a, b)
    return _reduce(lo, hi)


mul = mul_hw if HAVE_PCLMUL else mul_sw


@njit(cache=True)
def sqr_n(a, n):
    for _ in range(n):
        a = mul(a, a)
    return a


@njit(cache=True)
def inv(a):
    # a^(2^64-2) = (a^(2^63-1))^2, chain on exponents 2^j - 1:
    # 1, 2, 3, 6, 7, 14, 15, 30, 31, 62, 63
    b = a
    j = 1
    for step in range(5):
        b = mul(sqr_n(b, j), b)
        j *= 2
        b = mul(mul(b, b), a)
        j += 1
    return mul(b, b)


@njit(cache=True)
def sqrt(a):
    return sqr_n(a, 63)


@njit(cache=True)
def power(a, e):
    r = uint64(1)
    while e:
        if e & 1:
            r = mul(r, a)
        a = mul(a, a)
        e >>= 1
    return r


@njit(cache=True)
def mul_arrays(a, b):
    out = np.empty_like(a)
    for i in range(a.size):
        out.flat[i] = mul(a.flat[i], b.flat[i])
    return out


@njit(cache=True)
def matmul(a, b):
    n, k = a.shape
    m = b.shape[1]
    out = np.zeros((n, m), dtype=np.uint64)
    for i in range(n):
        for t in range(k):
            f = a[i, t]
            if f:
                for j in range(m):
                    out[i, j] ^= mul(f, b[t, j])
    return out


@njit(cache=True)
def det_inplace(m):
    n = m.shape[0]
    d = uint64(1)
    for c in range(n):
        p = -1
        for r in range(c, n):
            if m[r, c]:
                p = r
                break
        if p < 0:
            return uint64(0)
        if p != c:
            for j in range(c, n):
                t = m[p, j]
                m[p, j] = m[c, j]
                m[c, j] = t
        piv = m[c, c]
        d = mul(d, piv)
        ip = inv(piv)
        for r in range(c + 1, n):
            f = m[r, c]
            if f:
                f = mul(f, ip)
                for j in range(c + 1, n):
                    g = m[c, j]
                    if g:
                        m[r, j] ^= mul(f, g)
    return d


@njit(cache=True)
def rref_inplace(m):
    """Reduced row echelon form in place; returns the pivot columns."""
    rows, cols = m.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if m[i, c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(cols):
                t = m[p, j]
                m[p, j] = m[r, j]
                m[r, j] = t
        ip = inv(m[r, c])
        for j in range(cols):
            m[r, j] = mul(m[r, j], ip)
        for i in range(rows):
            if i != r:
                f = m[i, c]
                if f:
                    for j in range(cols):
                        g = m[r, j]
                        if g:
                            m[i, j] ^= mul(f, g)
        pivots[r] = c
        r += 1
    return pivots[:r]


@njit(cache=True)
def rank_inplace(m):
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if m[i, c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(c, cols):
                t = m[p, j]
                m[p, j] = m[r, j]
                m[r, j] = t
        ip = inv(m[r, c])
        for i in range(r + 1, rows):
            f = m[i, c]
            if f:
                f = mul(f, ip)
                for j in range(c + 1, cols):
                    g = m[r, j]
                    if g:
                        m[i, j] ^= mul(f, g)
        r += 1
    return r


@njit(cache=True)
def poly_eval(exps, coeffs, points):
    """Evaluate sum_t coeffs[t] * prod_v x_v^exps[t, v] at each row of points."""
    npts = points.shape[0]
    nterms, nvars = exps.shape
    out = np.zeros(npts, dtype=np.uint64)
    for p in range(npts):
        acc = uint64(0)
        for t in range(nterms):
            term = coeffs[t]
            for v in range(nvars):
                e = exps[t, v]
                if e:
                    term = mul(term, power(points[p, v], e))
                    if term == 0:
                        break
            acc ^= term
        out[p] = acc
    return out


# -- Pf(B A B^T) evaluation -------------------------------------------------
#
# The matching matrix B A B^T is a sum over edges e = {u, w} of x_e times a
# fixed block C_e (rows of u against rows of w) plus its transpose.  The
# blocks depend only on B and the random y values, so they are built once
# per context; an evaluation only scales them and takes a determinant.


@njit(inline="always")
def _fill(mat, x, e_ru, e_rw, e_du, e_dw, e_off, blocks):
    mat[:, :] = 0
    for e in range(e_ru.size):
        xv = x[e]
        if xv == 0:
            continue
        ru = e_ru[e]
        rw = e_rw[e]
        du = e_du[e]
        dw = e_dw[e]
        off = e_off[e]
        for a in range(du):
            for b in range(dw):
                c = blocks[off + a * dw + b]
                if c:
                    v = mul(xv, c)
                    mat[ru + a, rw + b] = v
                    mat[rw + b, ru + a] = v


@njit(cache=True, nogil=True)
def pf_points(dim, e_ru, e_rw, e_du, e_dw, e_off, blocks, points):
    npts = points.shape[0]
    out = np.empty(npts, dtype=np.uint64)
    mat = np.zeros((dim, dim), dtype=np.uint64)
    for p in range(npts):
        _fill(mat, points[p], e_ru, e_rw, e_du, e_dw, e_off, blocks)
        out[p] = sqrt(det_inplace(mat))
    return out


@njit(cache=True, nogil=True)
def fused_phi(dim, e_ru, e_rw, e_du, e_dw, e_off, blocks,
              t_idx, ep_idx, xprime, rp, sigmas, start, stop):
    """Partial sums of the combined extraction/sieve over combos [start, stop).

    Combo ``c`` encodes a zero-set of the extracted edges (high bits) and a
    zero-set of sieve rows (low ``rp.shape[0]`` bits).  For each sigma the
    returned entry is the XOR of Pf values over the combos.
    """
    m = e_ru.size
    nt = t_idx.size
    ne = ep_idx.size
    kk = rp.shape[0]
    low = (1 << kk) - 1
    x = np.zeros(m, dtype=np.uint64)
    mat = np.zeros((dim, dim), dtype=np.uint64)
    phi = np.zeros(sigmas.size, dtype=np.uint64)
    for c in range(start, stop):
        st = c >> kk
        sz = c & low
        for j in range(sigmas.size):
            s = sigmas[j]
            for a in range(nt):
                if (st >> a) & 1:
                    x[t_idx[a]] = 0
                else:
                    x[t_idx[a]] = s
            for b in range(ne):
                ell = uint64(0)
                for r in range(kk):
                    if not (sz >> r) & 1:
                        ell ^= rp[r, b]
                x[ep_idx[b]] = mul(xprime[b], _ONE ^ mul(s, ell))
            _fill(mat, x, e_ru, e_rw, e_du, e_dw, e_off, blocks)
            phi[j] ^= sqrt(det_inplace(mat))
    return phi
