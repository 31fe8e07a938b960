"""Linear algebra modulo word-size primes, CRT and rational reconstruction.

The row reduction and monomial evaluation kernels exist twice: a numba
version (loops) and a numpy version (vectorized row operations). Both return
identical results; :func:`rref_mod_p` and :func:`eval_monomials_mod_p`
dispatch on :func:`krallcremona._accel.numba_enabled`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

import gmpy2
import numpy as np

from ._accel import njit, numba_enabled

PRIME_START = 2**31 - 1


def primes(start: int = PRIME_START) -> Iterator[int]:
    """Descending primes below 2^31."""
    p = start
    while True:
        if gmpy2.is_prime(p):
            yield p
        p -= 2 if p % 2 else 1


# -- row reduction -------------------------------------------------------


@njit
def _rref_numba(a, p):
    rows, cols = a.shape
    piv = np.full(cols, -1, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        sel = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            for j in range(cols):
                t = a[r, j]
                a[r, j] = a[sel, j]
                a[sel, j] = t
        # modular inverse by Fermat
        inv = 1
        base = a[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for j in range(c, cols):
            a[r, j] = a[r, j] * inv % p
        for i in range(rows):
            if i != r:
                f = a[i, c]
                if f != 0:
                    for j in range(c, cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
        piv[r] = c
        r += 1
    return r, piv


def _rref_numpy(a, p):
    rows, cols = a.shape
    piv = np.full(cols, -1, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        sel = r + nz[0]
        if sel != r:
            a[[r, sel]] = a[[sel, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = a[r, c:] * inv % p
        f = a[:, c].copy()
        f[r] = 0
        idx = np.nonzero(f)[0]
        if idx.size:
            a[np.ix_(idx, np.arange(c, cols))] = (
                a[np.ix_(idx, np.arange(c, cols))] - np.outer(f[idx], a[r, c:]) % p) % p
        piv[r] = c
        r += 1
    return r, piv


def rref_mod_p(a: np.ndarray, p: int, use_numba: bool | None = None):
    """In-place reduced row echelon form mod p. Returns (rank, pivot columns)."""
    a = np.ascontiguousarray(a, dtype=np.int64) % p
    if use_numba is None:
        use_numba = numba_enabled()
    rank, piv = (_rref_numba if use_numba else _rref_numpy)(a, p)
    return a, int(rank), [int(c) for c in piv[:rank]]


def kernel_mod_p(a: np.ndarray, p: int, use_numba: bool | None = None):
    """Basis of the right kernel mod p (one vector per free column)."""
    red, rank, piv = rref_mod_p(a, p, use_numba)
    cols = a.shape[1]
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = (-red[i, f]) % p
        basis.append(v)
    return basis, free


# -- evaluation ----------------------------------------------------------


@njit
def _eval_monomials_numba(points, exps, p):
    npts, nv = points.shape
    nm = exps.shape[0]
    maxe = 0
    for i in range(nm):
        for j in range(nv):
            if exps[i, j] > maxe:
                maxe = exps[i, j]
    out = np.empty((npts, nm), dtype=np.int64)
    pw = np.empty((nv, maxe + 1), dtype=np.int64)
    for t in range(npts):
        for j in range(nv):
            pw[j, 0] = 1
            for e in range(1, maxe + 1):
                pw[j, e] = pw[j, e - 1] * points[t, j] % p
        for i in range(nm):
            acc = 1
            for j in range(nv):
                acc = acc * pw[j, exps[i, j]] % p
            out[t, i] = acc
    return out


def _eval_monomials_numpy(points, exps, p):
    npts, nv = points.shape
    maxe = int(exps.max()) if exps.size else 0
    pw = np.ones((npts, nv, maxe + 1), dtype=np.int64)
    for e in range(1, maxe + 1):
        pw[:, :, e] = pw[:, :, e - 1] * points % p
    out = np.ones((npts, exps.shape[0]), dtype=np.int64)
    for j in range(nv):
        out = out * pw[:, j, exps[:, j]] % p
    return out


def eval_monomials_mod_p(points: np.ndarray, exps: np.ndarray, p: int,
                         use_numba: bool | None = None) -> np.ndarray:
    """Matrix of monomial values: out[t, i] = prod_j points[t, j]^exps[i, j] mod p."""
    points = np.ascontiguousarray(points, dtype=np.int64) % p
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    if use_numba is None:
        use_numba = numba_enabled()
    return (_eval_monomials_numba if use_numba else _eval_monomials_numpy)(points, exps, p)


# -- reconstruction ------------------------------------------------------


def frac_mod(c: Fraction, p: int) -> int:
    den = c.denominator % p
    if den == 0:
        raise ZeroDivisionError("denominator vanishes modulo p")
    return c.numerator * pow(den, -1, p) % p


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t, m1 * m2


def rational_reconstruction(a: int, m: int):
    """Fraction n/d with n = a*d mod m, |n|, d <= sqrt(m/2); None if none."""
    a %= m
    bound = gmpy2.isqrt(m // 2)
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    if gmpy2.gcd(r1, t1) != 1:
        return None
    return Fraction(int(r1), int(t1))


def reconstruct_vector(residues: Sequence[np.ndarray], mods: Sequence[int]):
    """CRT-combine residue vectors and rationally reconstruct every entry."""
    acc = [int(x) for x in residues[0]]
    m = mods[0]
    for res, p in zip(residues[1:], mods[1:]):
        new = []
        for a, b in zip(acc, res):
            new.append(crt_pair(a, m, int(b), p)[0])
        acc = new
        m *= p
    out = []
    for a in acc:
        f = rational_reconstruction(a, m)
        if f is None:
            return None
        out.append(f)
    return out
