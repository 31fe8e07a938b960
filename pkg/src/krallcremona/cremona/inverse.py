"""Inverse maps: generic modular solve at fixed k, structural solve at
integer k, and the parametric inverse interpolated in k."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from ..exactpoly.gcd import lcm_upoly
from ..exactpoly.interp import reconstruct_rational
from ..exactpoly.linalg import PolyMatrix, RankAnomalyError, kernel_fraction_free, normalize_vector
from ..exactpoly.poly import MultiPoly, VarSet, compose as poly_compose
from ..exactpoly.univariate import newton_interpolate, udivmod, ueval, ugcd, umul, utrim
from ..krall import expansion_at_k, orthogonality_rows
from ..modular import (eval_monomials_mod_p, frac_mod, kernel_mod_p, primes,
                       reconstruct_vector)
from ..orthobasis import ONE_SIDED, WeightSpec
from ..paramlift import (VALIDATION_POINTS, DegreeBoundError, ParametricMap, component_modes,
                         first_sample, k_degree_bound, map_degree)
from .maps import FixedMap, j_names


class NoInverseError(ArithmeticError):
    """The inverse system has only the trivial solution at this degree."""


class InverseConsistencyError(ArithmeticError):
    pass


# -- generic inverse at a fixed parameter --------------------------------------


def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def _map_mod_p(F: FixedMap, points: np.ndarray, p: int) -> np.ndarray:
    vs = F.vs
    monos = sorted(set().union(*(c.num.keys() for c in F.components)))
    exps = np.array([vs.unpack(m) for m in monos], dtype=np.int64).reshape(len(monos), len(vs))
    vals = eval_monomials_mod_p(points, exps, p)
    out = np.zeros((points.shape[0], len(F)), dtype=np.int64)
    for ci, c in enumerate(F.components):
        for mi, m in enumerate(monos):
            coeff = c.coeff_packed(m)
            if coeff:
                out[:, ci] = (out[:, ci] + vals[:, mi] * frac_mod(coeff, p)) % p
    return out


def _inverse_system_mod_p(F: FixedMap, monos, points: np.ndarray, p: int) -> np.ndarray:
    N = len(F) - 1
    M = len(monos)
    y = _map_mod_p(F, points, p)
    Y = eval_monomials_mod_p(y, np.array(monos, dtype=np.int64), p)
    x = points % p
    rows = np.zeros((points.shape[0] * N, (N + 1) * M), dtype=np.int64)
    r = 0
    for t in range(points.shape[0]):
        for i in range(1, N + 1):
            rows[r, i * M:(i + 1) * M] = Y[t] * x[t, 0] % p
            rows[r, 0:M] = (-Y[t] * x[t, i]) % p
            r += 1
    return rows


def _verify_inverse(G: Sequence[MultiPoly], F: FixedMap) -> MultiPoly:
    """lambda with G(F(x)) = lambda * x, or raise InverseConsistencyError."""
    src = F.vs
    images = [poly_compose(g, list(F.components), src) for g in G]
    lam = None
    for i, img in enumerate(images):
        if img:
            q = img.try_divide(MultiPoly.var(src, src.names[i]))
            if q is None:
                raise InverseConsistencyError(f"component {i} of G(F) is not divisible by x_{i}")
            lam = q
            break
    if lam is None or not lam:
        raise InverseConsistencyError("G(F) vanishes identically")
    for i, img in enumerate(images):
        if img != lam * MultiPoly.var(src, src.names[i]):
            raise InverseConsistencyError(f"G(F) differs from lambda*x in component {i}")
    return lam


def invert(F: FixedMap, *, degree: int | None = None, seed: int = 0,
           names: Sequence[str] | None = None, max_primes: int = 24) -> tuple[FixedMap, MultiPoly]:
    """Inverse of a square map at a fixed parameter.

    The coefficients of degree-``degree`` candidates G_i (in the variables
    ``names``, default j0..jN) solve G_i(F(x)) x_0 - G_0(F(x)) x_i = 0. The
    system is sampled at random points modulo several primes, its kernel
    is rationally reconstructed, and G(F(x)) = lambda x is then checked
    exactly. Returns (G, lambda).
    """
    N1 = len(F)
    if len(F.vs) != N1:
        raise ValueError("invert needs as many components as variables")
    d = F.degree if degree is None else degree
    names = tuple(names) if names is not None else j_names(N1)
    jvs = VarSet(names)
    monos = _monomials(N1, d)
    M = len(monos)
    cols = N1 * M
    npts = -(-(cols + 8) // max(N1 - 1, 1))
    rng = random.Random(seed)
    residues, mods = [], []
    ref = None
    last = None
    anomalies = 0
    for count, p in enumerate(primes()):
        if count >= max_primes:
            break
        points = np.array([[rng.randrange(1, p) for _ in range(N1)] for _ in range(npts)],
                          dtype=np.int64)
        try:
            A = _inverse_system_mod_p(F, monos, points, p)
        except ZeroDivisionError:
            continue
        basis, free = kernel_mod_p(A, p)
        if not basis:
            raise NoInverseError(f"no inverse of degree {d}")
        if len(basis) > 1:
            anomalies += 1
            if anomalies >= 3:
                raise RankAnomalyError(cols - len(basis), cols, "inverse system")
            continue
        v = basis[0]
        if ref is None:
            ref = free[0]
        if v[ref] == 0:
            continue
        v = v * pow(int(v[ref]), -1, p) % p
        residues.append(v)
        mods.append(p)
        vec = reconstruct_vector(residues, mods)
        if vec is None or vec != last:
            last = vec
            continue
        G = _vector_to_map(vec, monos, jvs, N1, M)
        if G is None:
            continue
        G = normalize_vector(G)
        try:
            lam = _verify_inverse(G, F)
        except InverseConsistencyError:
            last = None
            continue
        return FixedMap(tuple(G)), lam
    raise InverseConsistencyError("modular reconstruction of the inverse did not stabilize")


def _vector_to_map(vec, monos, jvs, N1, M):
    comps = []
    for i in range(N1):
        terms = {monos[t]: vec[i * M + t] for t in range(M) if vec[i * M + t]}
        comps.append(MultiPoly.from_terms(jvs, terms))
    if not any(comps):
        return None
    return comps


def check_inverse(G: FixedMap, F: FixedMap) -> MultiPoly:
    """Exact check G o F = lambda * identity; returns lambda."""
    return _verify_inverse(list(G.components), F)


# -- structural inverse at integer k --------------------------------------------


def _normalizer(c: MultiPoly, mode: str) -> Fraction:
    if mode == "const":
        return c.constant_term()
    e = [0] * len(c.vs)
    e[c.vs.index["l0"]] = 1
    return c.coeff(e)


def structural_inverse(family: str, n: int, k: int, modes=None) -> FixedMap:
    """Inverse of the normalized map at a non-negative integer k.

    With the map components j_i = e_i / s_i (e the expansion vector, s_i the
    normalizers), every orthogonality equation sum_i A_mi(l) e_i = 0 becomes
    linear in (l, h) with coefficients linear in j. Its one-dimensional kernel
    over Q(j) is the inverse.
    """
    w = WeightSpec(family, n)
    e = expansion_at_k(family, n, k)
    if modes is None:
        modes = component_modes(e)
    s = [_normalizer(c, md) if c else Fraction(0) for c, md in zip(e.coeffs, modes)]
    if any(x == 0 for x in s):
        raise ZeroDivisionError(f"vanishing normalizer at k={k}")
    rows, active = orthogonality_rows(w, k)
    jvs = VarSet(j_names(w.width))
    jv = [MultiPoly.var(jvs, nm) for nm in jvs.names]
    unknowns = list(range(1, len(w.params) + 1)) + [0]  # affine-form slots for params, then h
    mat = []
    for r in rows:
        line = []
        for slot in unknowns:
            acc = MultiPoly.zero(jvs)
            for t, i in enumerate(active):
                c = r[t][slot]
                if c:
                    acc = acc + jv[i].scale(c * s[i])
            line.append(acc)
        mat.append(line)
    ker = kernel_fraction_free(PolyMatrix(mat, jvs), context=f"inverse family={family} n={n} k={k}")
    return FixedMap(tuple(ker))


# -- parametric inverse ---------------------------------------------------------


@dataclass(frozen=True)
class LiftedVector:
    components: tuple[MultiPoly, ...]
    samples: tuple[int, ...]
    k_degree: int


def _uprimitive_int(u):
    d = math.lcm(*(c.denominator for c in u if c))
    ints = [int(c * d) for c in u]
    g = math.gcd(*ints)
    return [Fraction(c, g) for c in ints]


def lift_vector(samples: Sequence[tuple[int, Sequence[MultiPoly]]], validation: int = VALIDATION_POINTS):
    """Projective vector polynomial in k through per-k representatives.

    Each sample is defined up to a scalar, so ratios to a reference
    coefficient are reconstructed as rational functions in k; the common
    denominator is cleared and the k-content removed. Returns the
    components over the sample variable set plus k, or None when the
    validation samples are not matched.
    """
    vs = samples[0][1][0].vs
    ref_comp = next(i for i, c in enumerate(samples[0][1]) if c)
    ref_mono = samples[0][1][ref_comp].leading_monomial()
    pts = [(Fraction(k0), comps) for k0, comps in samples if comps[ref_comp].coeff_packed(ref_mono)]
    if len(pts) <= validation:
        return None
    keys = sorted({(i, m) for _, comps in pts for i, c in enumerate(comps) for m in c.num})
    fit, chk = pts[:len(pts) - validation], pts[len(pts) - validation:]
    xs = [k0 for k0, _ in fit]
    cx = [k0 for k0, _ in chk]

    def ratios(group, key):
        i, m = key
        return [comps[i].coeff_packed(m) / comps[ref_comp].coeff_packed(ref_mono) for _, comps in group]

    den: list = [Fraction(1)]
    den_at = [Fraction(1)] * len(xs)
    den_chk = [Fraction(1)] * len(cx)
    nums: dict = {}
    for key in keys:
        ys, cys = ratios(fit, key), ratios(chk, key)
        num = _try_polynomial(xs, [y * d for y, d in zip(ys, den_at)], cx,
                              [y * d for y, d in zip(cys, den_chk)])
        if num is None:
            rr = reconstruct_rational(xs, ys, cx, cys)
            if rr is None:
                return None
            new_den = lcm_upoly(den, rr[1])
            factor, rem = udivmod(new_den, den)
            assert not rem
            nums = {kk: umul(v, factor) for kk, v in nums.items()}
            den = new_den
            den_at = [ueval(den, x) for x in xs]
            den_chk = [ueval(den, x) for x in cx]
            q, rem = udivmod(umul(rr[0], den), rr[1])
            assert not rem
            num = q
        nums[key] = num
    # remove the k-content and the integer content
    g: list = []
    for u in nums.values():
        g = ugcd(g, u) if g else u
    if len(utrim(g)) > 1:
        nums = {kk: udivmod(u, g)[0] for kk, u in nums.items()}
    out_vs = VarSet(vs.names + ("k",))
    kunit = out_vs.var_unit(len(out_vs) - 1)
    ncomp = len(samples[0][1])
    terms: list[dict] = [dict() for _ in range(ncomp)]
    for (i, m), u in nums.items():
        base = out_vs.pack(vs.unpack(m) + (0,))
        for e, c in enumerate(u):
            if c:
                terms[i][base + e * kunit] = c
    comps = [MultiPoly.from_packed(out_vs, t) for t in terms]
    comps = _int_normalize(comps)
    kdeg = max((c.degree_in("k") for c in comps if c), default=0)
    return LiftedVector(tuple(comps), tuple(int(k0) for k0, _ in pts), kdeg)


def _int_normalize(comps):
    nums, dens = [], []
    for c in comps:
        if c:
            nums.append(math.gcd(*c.num.values()))
            dens.append(c.den)
    g = Fraction(math.gcd(*nums), math.lcm(*dens))
    first = next(c for c in comps if c)
    if first.lc() < 0:
        g = -g
    return [c.scale(1 / g) if c else c for c in comps]


def _try_polynomial(xs, ys, cx, cys):
    u = utrim(newton_interpolate(xs, ys))
    for x, y in zip(cx, cys):
        if ueval(u, x) != y:
            return None
    # a polynomial using every fit point is not certified by the fit alone
    if len(u) == len(xs) and not cx:
        return None
    return u


def _structural_samples(family, n, ks, modes, executor):
    if executor is None:
        return [structural_inverse(family, n, k, modes) for k in ks]
    return list(executor.map(structural_inverse, [family] * len(ks), [n] * len(ks), ks,
                             [modes] * len(ks)))


def invert_parametric(m: ParametricMap, *, validation: int = VALIDATION_POINTS,
                      max_rounds: int = 6, executor=None) -> ParametricMap:
    """Parametric inverse, interpolated from structural inverses at integer k.

    The sample count starts at 2B + 1 + validation (B the conjectured
    k-degree) and grows by B per round until the held-out samples agree.
    The returned map lives over j0..jN and k; its true k-degree is reported
    through ``degree_in_k``.
    """
    family, n = m.family, m.n
    B = k_degree_bound(family, n)
    k0 = first_sample(family, n)
    while k0 in m.skipped:
        k0 += 1
    modes = component_modes(expansion_at_k(family, n, k0))
    need = 2 * B + 1 + validation
    samples: list[tuple[int, tuple]] = []
    k = k0
    for _ in range(max_rounds):
        batch = []
        while len(samples) + len(batch) < need:
            if k not in m.skipped:
                batch.append(k)
            k += 1
        for kk, G in zip(batch, _structural_samples(family, n, batch, modes, executor)):
            samples.append((kk, G.components))
        lifted = lift_vector(samples, validation)
        if lifted is not None:
            deg = map_degree(family, n)
            for c in lifted.components:
                if c and c.degree_in_vars(j_names(len(lifted.components))) != deg:
                    raise DegreeBoundError("parametric inverse has unexpected degree")
            return ParametricMap(family, n, lifted.components, m.skipped, kind="inverse")
        need += B
    raise DegreeBoundError(f"inverse reconstruction did not validate with {len(samples)} samples")


