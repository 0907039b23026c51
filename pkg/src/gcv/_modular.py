"""Compiled kernels for determinant evaluation modulo ~50-bit primes.

Products are reduced with a floating-point quotient estimate, which is exact
for p < 2^50 after one correction step.
"""

from __future__ import annotations

import numpy as np
from numba import float64, njit

PRIME_BITS = 50


@njit(cache=True, inline="always")
def _mulmod(a, b, p, pinv):
    q = np.uint64(float64(a) * float64(b) * pinv)
    r = np.int64(a * b - q * p)
    if r < 0:
        r += np.int64(p)
    elif r >= np.int64(p):
        r -= np.int64(p)
    return np.uint64(r)


@njit(cache=True)
def _powmod(a, e, p, pinv):
    r = np.uint64(1)
    b = a
    while e:
        if e & 1:
            r = _mulmod(r, b, p, pinv)
        b = _mulmod(b, b, p, pinv)
        e >>= 1
    return r


@njit(cache=True)
def inverse_all(a, p):
    pinv = 1.0 / float64(p)
    out = np.empty_like(a)
    for i in range(a.shape[0]):
        out[i] = _powmod(a[i], np.int64(p - np.uint64(2)), p, pinv)
    return out


@njit(cache=True)
def mul_all(a, b, p):
    pinv = 1.0 / float64(p)
    out = np.empty_like(a)
    for i in range(a.shape[0]):
        out[i] = _mulmod(a[i], b[i], p, pinv)
    return out


@njit(cache=True)
def fill_entries(out, nodes, strides, maxdeg, ent_i, ent_j, term_ptr, term_c, term_e, p):
    """out[b, i, j] = entry(i, j) at the Kronecker node t = nodes[b]."""
    pinv = 1.0 / float64(p)
    nparams = strides.shape[0]
    offs = np.zeros(nparams + 1, dtype=np.int64)
    for v in range(nparams):
        offs[v + 1] = offs[v] + maxdeg[v] + 1
    table = np.empty(offs[nparams], dtype=np.uint64)
    nent = ent_i.shape[0]
    for b in range(nodes.shape[0]):
        t = nodes[b]
        for v in range(nparams):
            base = _powmod(t, strides[v], p, pinv)
            acc = np.uint64(1)
            for e in range(maxdeg[v] + 1):
                table[offs[v] + e] = acc
                acc = _mulmod(acc, base, p, pinv)
        for k in range(nent):
            s = np.uint64(0)
            for q in range(term_ptr[k], term_ptr[k + 1]):
                val = term_c[q]
                for v in range(nparams):
                    e = term_e[q, v]
                    if e:
                        val = _mulmod(val, table[offs[v] + e], p, pinv)
                s += val
                if s >= p:
                    s -= p
            out[b, ent_i[k], ent_j[k]] = s


@njit(cache=True)
def det_batch(a, p):
    """Determinants mod p of a stack of square matrices; a is overwritten."""
    pinv = 1.0 / float64(p)
    nb, n, _ = a.shape
    out = np.empty(nb, dtype=np.uint64)
    for b in range(nb):
        m = a[b]
        det = np.uint64(1)
        for k in range(n):
            piv = -1
            for i in range(k, n):
                if m[i, k] != 0:
                    piv = i
                    break
            if piv < 0:
                det = np.uint64(0)
                break
            if piv != k:
                for j in range(k, n):
                    t = m[k, j]
                    m[k, j] = m[piv, j]
                    m[piv, j] = t
                if det:
                    det = p - det
            pk = m[k, k]
            det = _mulmod(det, pk, p, pinv)
            inv = _powmod(pk, np.int64(p - np.uint64(2)), p, pinv)
            for i in range(k + 1, n):
                if m[i, k] != 0:
                    f = p - _mulmod(m[i, k], inv, p, pinv)
                    for j in range(k + 1, n):
                        v = m[i, j] + _mulmod(f, m[k, j], p, pinv)
                        m[i, j] = v - p if v >= p else v
        out[b] = det
    return out


@njit(cache=True)
def interpolate_consecutive(vals, base, p):
    """Monomial coefficients mod p of the polynomial through (base + j, vals[j])."""
    pinv = 1.0 / float64(p)
    L = vals.shape[0]
    c = vals.copy()
    for j in range(1, L):
        inv_j = _powmod(np.uint64(j), np.int64(p - np.uint64(2)), p, pinv)
        for i in range(L - 1, j - 1, -1):
            d = c[i] + p - c[i - 1]
            if d >= p:
                d -= p
            c[i] = _mulmod(d, inv_j, p, pinv)
    poly = np.zeros(L, dtype=np.uint64)
    poly[0] = c[L - 1]
    deg = 0
    for j in range(L - 2, -1, -1):
        node = (base + np.uint64(j)) % p
        for i in range(deg + 1, 0, -1):
            v = poly[i - 1] + p - _mulmod(poly[i], node, p, pinv)
            poly[i] = v - p if v >= p else v
        v = c[j] + p - _mulmod(poly[0], node, p, pinv)
        poly[0] = v - p if v >= p else v
        deg += 1
    return poly


@njit(cache=True)
def charpoly(h, p):
    """Characteristic polynomial det(x I - h) mod p, low degree first; h is overwritten."""
    pinv = 1.0 / float64(p)
    n = h.shape[0]
    # similarity reduction to upper Hessenberg form
    for m in range(1, n - 1):
        col = m - 1
        piv = -1
        for i in range(m, n):
            if h[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != m:
            for j in range(n):
                t = h[piv, j]
                h[piv, j] = h[m, j]
                h[m, j] = t
            for i in range(n):
                t = h[i, piv]
                h[i, piv] = h[i, m]
                h[i, m] = t
        inv = _powmod(h[m, col], np.int64(p - np.uint64(2)), p, pinv)
        for j in range(m + 1, n):
            u = _mulmod(h[j, col], inv, p, pinv)
            if u == 0:
                continue
            nu = p - u
            for c in range(n):
                v = h[j, c] + _mulmod(nu, h[m, c], p, pinv)
                h[j, c] = v - p if v >= p else v
            for r in range(n):
                v = h[r, m] + _mulmod(u, h[r, j], p, pinv)
                h[r, m] = v - p if v >= p else v
    polys = np.zeros((n + 1, n + 1), dtype=np.uint64)
    polys[0, 0] = 1
    for m in range(1, n + 1):
        d = h[m - 1, m - 1]
        nd = p - d if d else np.uint64(0)
        for k in range(m + 1):
            v = np.uint64(0)
            if k >= 1:
                v = polys[m - 1, k - 1]
            if k <= m - 1:
                v += _mulmod(nd, polys[m - 1, k], p, pinv)
                if v >= p:
                    v -= p
            polys[m, k] = v
        t = np.uint64(1)
        for i in range(m - 1, 0, -1):
            t = _mulmod(t, h[i, i - 1], p, pinv)
            if t == 0:
                break
            f = _mulmod(h[i - 1, m - 1], t, p, pinv)
            if f == 0:
                continue
            nf = p - f
            for k in range(i):
                v = polys[m, k] + _mulmod(nf, polys[i - 1, k], p, pinv)
                polys[m, k] = v - p if v >= p else v
    out = np.empty(n + 1, dtype=np.uint64)
    for k in range(n + 1):
        out[k] = polys[n, k]
    return out


@njit(cache=True)
def pencil_poly(a, d, cols, sigma, p):
    """Coefficients in s of det(a + s d) mod p, for a constant d supported on ``cols``.

    Uses det(a + s d) = det(a_sigma) det(I + (s - sigma) Y) where a_sigma = a + sigma d
    and Y is the (cols, cols) block of a_sigma^-1 d.  Returns (ok, coeffs); ok is
    False when a_sigma is singular.
    """
    pinv = 1.0 / float64(p)
    n = a.shape[0]
    k = cols.shape[0]
    w = n + k
    m = np.empty((n, w), dtype=np.uint64)
    for i in range(n):
        for j in range(n):
            m[i, j] = a[i, j]
            if d[i, j]:
                v = a[i, j] + _mulmod(sigma, d[i, j], p, pinv)
                m[i, j] = v - p if v >= p else v
        for c in range(k):
            m[i, n + c] = d[i, cols[c]]
    det = np.uint64(1)
    coeffs = np.zeros(k + 1, dtype=np.uint64)
    # Gauss-Jordan on [a_sigma | d_cols]
    for c in range(n):
        piv = -1
        for i in range(c, n):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            return False, coeffs
        if piv != c:
            for j in range(c, w):
                t = m[c, j]
                m[c, j] = m[piv, j]
                m[piv, j] = t
            det = p - det if det else det
        det = _mulmod(det, m[c, c], p, pinv)
        inv = _powmod(m[c, c], np.int64(p - np.uint64(2)), p, pinv)
        for j in range(c, w):
            m[c, j] = _mulmod(m[c, j], inv, p, pinv)
        for i in range(n):
            if i != c and m[i, c] != 0:
                f = p - m[i, c]
                for j in range(c, w):
                    v = m[i, j] + _mulmod(f, m[c, j], p, pinv)
                    m[i, j] = v - p if v >= p else v
    y = np.empty((k, k), dtype=np.uint64)
    for r in range(k):
        for c in range(k):
            y[r, c] = m[cols[r], n + c]
    chi = charpoly(y, p)
    # det(I + u Y) = sum_i (-1)^i chi_{k-i} u^i, scaled by det(a_sigma)
    q = np.empty(k + 1, dtype=np.uint64)
    for i in range(k + 1):
        v = _mulmod(chi[k - i], det, p, pinv)
        q[i] = (p - v if v else v) if i % 2 else v
    # substitute u = s - sigma
    ns = p - sigma if sigma else sigma
    for i in range(k, -1, -1):
        for j in range(k, 0, -1):
            v = _mulmod(coeffs[j], ns, p, pinv) + coeffs[j - 1]
            coeffs[j] = v - p if v >= p else v
        v = _mulmod(coeffs[0], ns, p, pinv) + q[i]
        coeffs[0] = v - p if v >= p else v
    return True, coeffs
