"""Factor shapes of Jacobian determinants and the special-k census."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..exactpoly.gcd import content_primitive, multivariate_gcd, to_upoly
from ..exactpoly.poly import MultiPoly, VarSet
from ..exactpoly.roots import NOT_PERFECT_POWER, nth_root, rational_roots, squarefree_decomposition
from ..exactpoly.univariate import newton_interpolate, ueval, utrim
from ..orthobasis import ONE_SIDED
from ..paramlift import ParametricMap, first_sample
from ..paramlift import VALIDATION_POINTS
from .inverse import lift_vector
from .maps import jacobian_det, lr_conjugate, specialize_raw


class ShapeError(ArithmeticError):
    pass


@dataclass(frozen=True)
class FactorShape:
    """d = content * prod(f**e for f, e in factors) * residual."""

    content_in_k: MultiPoly
    factors: tuple[tuple[MultiPoly, int], ...]
    residual: MultiPoly
    notes: tuple[str, ...] = field(default=())

    @property
    def explained(self) -> bool:
        return self.residual.is_constant() and bool(self.residual)

    def product(self) -> MultiPoly:
        out = self.content_in_k * self.residual
        for f, e in self.factors:
            out = out * f ** e
        return out


def _proj_names(p: MultiPoly) -> list[str]:
    return [v for v in p.vs.names if v != "k"]


def _positive(p: MultiPoly) -> tuple[MultiPoly, int]:
    return (p, 1) if p.lc() > 0 else (-p, -1)


def factor_shape(d: MultiPoly, hyperplanes: Sequence[MultiPoly] = (), root: int = 1,
                 lr_split: bool = False, candidate: MultiPoly | None = None) -> FactorShape:
    """Decompose d along its k-content, designated hyperplanes and a perfect power.

    The k-content is split off, each hyperplane is divided out as often as
    possible, and the rest must be a ``root``-th power. With ``lr_split`` the
    root is further split as candidate * LR(candidate). Whatever does not fit
    stays in the residual.
    """
    if d.is_zero():
        raise ValueError("factor shape of the zero polynomial")
    content, prim = content_primitive(d, _proj_names(d))
    factors: list[tuple[MultiPoly, int]] = []
    for hp in hyperplanes:
        e, prim = prim.multiplicity(hp.embed(d.vs) if hp.vs is not d.vs else hp)
        factors.append((hp, e))
    prim, sign = _positive(prim)
    content = content.scale(sign)
    notes = []
    residual = prim
    if root > 1 or lr_split:
        r = nth_root(prim, root) if root > 1 else prim
        if r is NOT_PERFECT_POWER:
            notes.append(f"not a perfect {root}-th power")
        elif not lr_split:
            factors.append((r, root))
            residual = MultiPoly.const(d.vs, 1)
        else:
            split = _lr_split(r, candidate)
            if split is None:
                notes.append("root is not candidate * LR(candidate)")
            else:
                cand, bar, c = split
                factors.extend([(cand, root), (bar, root)])
                residual = MultiPoly.const(d.vs, c ** root)
    elif not prim.is_constant():
        factors.append((prim, 1))
        residual = MultiPoly.const(d.vs, 1)
    shape = FactorShape(content, tuple(factors), residual, tuple(notes))
    if shape.product() != d:
        raise ShapeError("factor shape does not reproduce its input")
    return shape


def _lr_split(r: MultiPoly, candidate: MultiPoly | None):
    if candidate is None:
        return None
    cand = candidate.embed(r.vs) if candidate.vs is not r.vs else candidate
    bar = lr_conjugate(cand)
    q = r.try_divide(cand)
    q = q.try_divide(bar) if q is not None else None
    if q is None or not q.is_constant():
        return None
    return cand, bar, q.constant_term()


# -- inverse structure --------------------------------------------------------


@dataclass(frozen=True)
class InverseStructure:
    gamma: MultiPoly
    gamma_conjugate: MultiPoly | None
    exponent_pattern: tuple[tuple[int, int], ...]
    h_scalar: MultiPoly


def _j_names(p: MultiPoly) -> list[str]:
    return [v for v in p.vs.names if v.startswith("j")]


def extract_gamma(inv: ParametricMap) -> InverseStructure:
    """Read Gamma off the h-component c(k) * Gamma^n (one-sided) or
    c(k) * (Gamma * LR(Gamma))^n (two-sided)."""
    n = inv.n
    hcomp = inv.components[-1]
    jn = _j_names(hcomp)
    c, prim = content_primitive(hcomp, jn)
    r = nth_root(prim, n)
    if r is NOT_PERFECT_POWER:
        raise ShapeError("h-component of the inverse is not an n-th power")
    if inv.family == ONE_SIDED:
        gamma, bar = r, None
    else:
        _, p0 = content_primitive(inv.components[0], jn)
        gamma = _linear_common_factor(r, p0, jn)
        if gamma.degree_in_vars(jn) != 1:
            raise ShapeError("no linear common factor between the h-component and component 0")
        gamma = content_primitive(gamma, jn)[1]
        bar = content_primitive(lr_conjugate(gamma), jn)[1]
        q = r.try_divide(gamma)
        if q is None or not q.try_divide(bar) or not q.divexact(bar).is_constant():
            raise ShapeError("h-component root is not Gamma * LR(Gamma)")
    pattern = []
    for comp in inv.components:
        e1, rest = comp.multiplicity(gamma)
        e2 = rest.multiplicity(bar)[0] if bar is not None else 0
        pattern.append((e1, e2))
    return InverseStructure(gamma, bar, tuple(pattern), c)


def _linear_common_factor(a: MultiPoly, b: MultiPoly, jn: list[str]) -> MultiPoly:
    """gcd(a, b) when it is linear in ``jn``.

    Computed from gcds at integer k (no k in the recursion) and lifted by
    ratio reconstruction; the full multivariate gcd is the fallback.
    """
    kdeg = a.degree_in("k")
    need = 2 * kdeg + 2 + VALIDATION_POINTS
    jvs = VarSet(tuple(jn))
    samples = []
    k0 = 1
    while len(samples) < need and k0 < 4 * need + 50:
        g = multivariate_gcd(a.subs({"k": k0}).restrict(jvs), b.subs({"k": k0}).restrict(jvs))
        if g.degree() == 1:
            samples.append((k0, [g]))
        k0 += 1
    lifted = lift_vector(samples) if len(samples) == need else None
    if lifted is not None:
        g = lifted.components[0].embed(a.vs)
        if a.try_divide(g) is not None and b.try_divide(g) is not None:
            return g
    return multivariate_gcd(a, b)


def pullback_hypersurface(gamma: MultiPoly, m: ParametricMap) -> MultiPoly:
    """(Gamma o f) / h with the k-content removed; raises if h does not divide."""
    vs = m.vs
    acc = MultiPoly.zero(vs)
    jn = _j_names(gamma)
    from ..exactpoly.gcd import coefficients_in
    coeffs = coefficients_in(gamma, jn)
    for i, name in enumerate(jn):
        key = tuple(1 if t == i else 0 for t in range(len(jn)))
        c = coeffs.get(key)
        if c is None:
            continue
        ck = c.restrict(VarSet(("k",))).embed(vs)
        acc = acc + ck * m.components[int(name[1:])]
    q = acc.try_divide(MultiPoly.var(vs, "h"))
    if q is None:
        raise ShapeError("pullback of Gamma is not divisible by h")
    return content_primitive(q, [v for v in vs.names if v != "k"])[1]


# -- certified parametric shapes ---------------------------------------------------


@dataclass(frozen=True)
class CertifiedShape:
    """det(k) = D(k) * prod H_i(k)^e_i * prod S_j(k)^m, certified by
    agreement at kbound + 1 integer samples."""

    D: list  # univariate coefficients, low first
    hyperplanes: tuple[tuple[MultiPoly, int], ...]
    roots: tuple[tuple[MultiPoly, int], ...]
    kbound: int
    samples: tuple[int, ...]
    certified: bool
    failure: str | None = None

    @property
    def d_degree(self) -> int:
        return len(utrim(self.D)) - 1

    def d_roots(self):
        return rational_roots(self.D)


def _kdeg(p: MultiPoly) -> int:
    return p.degree_in("k") if "k" in p.vs and p else 0


def _at(p: MultiPoly, k0, vs: VarSet) -> MultiPoly:
    return p.subs({"k": k0}).restrict(vs)


def certified_shape(m: ParametricMap, hyperplanes: Sequence[tuple[MultiPoly, int]],
                    root: int, root_factors: Sequence[MultiPoly] | None = None,
                    start: int | None = None) -> CertifiedShape:
    """Certified factor shape of det jac of a parametric map.

    ``hyperplanes`` are (H(k), e) with fixed exponents. If ``root_factors``
    is None the remaining factor is discovered as the ``root``-th root of the
    sampled quotients and lifted in k; otherwise the given factors are used,
    each with multiplicity ``root``.
    """
    proj = m.proj_vars
    pvs = VarSet(proj)
    kbound = sum(_kdeg(c) for c in m.components)
    k0 = start if start is not None else first_sample(m.family, m.n) + m.n
    ks: list[int] = []
    dets: list[MultiPoly] = []
    while len(ks) < kbound + 1:
        if all(_at(h, k0, pvs) for h, _ in hyperplanes):
            F = specialize_raw(m, k0)
            dets.append(jacobian_det(F, proj))
            ks.append(k0)
        k0 += 1
    quotients = []
    for k, d in zip(ks, dets):
        if not d:
            quotients.append(None)
            continue
        den = MultiPoly.const(pvs, 1)
        for h, e in hyperplanes:
            den = den * _at(h, k, pvs) ** e
        q = d.try_divide(den)
        if q is None:
            return CertifiedShape([], tuple(hyperplanes), (), kbound, tuple(ks), False,
                                  f"hyperplane powers do not divide det at k={k}")
        quotients.append(q)
    if root_factors is None:
        roots = []
        for k, q in zip(ks, quotients):
            if q is None:
                continue
            r = nth_root(q.monic(), root) if not q.is_constant() else MultiPoly.const(pvs, 1)
            if r is NOT_PERFECT_POWER:
                return CertifiedShape([], tuple(hyperplanes), (), kbound, tuple(ks), False,
                                      f"quotient at k={k} is not a {root}-th power")
            roots.append((k, [r]))
        if all(r[0].is_constant() for _, r in roots):
            root_factors = []
        else:
            lifted = lift_vector(roots)
            if lifted is None:
                return CertifiedShape([], tuple(hyperplanes), (), kbound, tuple(ks), False,
                                      "root does not lift to a polynomial in k")
            S = lifted.components[0]
            S = content_primitive(S, proj)[1]
            root_factors = [S]
    Dvals = []
    for k, q in zip(ks, quotients):
        if q is None:
            Dvals.append(Fraction(0))
            continue
        den = MultiPoly.const(pvs, 1)
        for s in root_factors:
            den = den * _at(s, k, pvs) ** root
        c = q.try_divide(den) if den else None
        if c is None or not c.is_constant():
            return CertifiedShape([], tuple(hyperplanes), tuple((s, root) for s in root_factors),
                                  kbound, tuple(ks), False, f"non-constant cofactor at k={k}")
        Dvals.append(c.constant_term())
    dbound = kbound - sum(e * _kdeg(h) for h, e in hyperplanes) - root * sum(_kdeg(s) for s in root_factors)
    if dbound < 0:
        return CertifiedShape([], tuple(hyperplanes), tuple((s, root) for s in root_factors),
                              kbound, tuple(ks), False, "factor k-degrees exceed the bound")
    D = utrim(newton_interpolate(ks[:dbound + 1], Dvals[:dbound + 1]))
    ok = all(ueval(D, k) == v for k, v in zip(ks, Dvals))
    return CertifiedShape(D, tuple(hyperplanes), tuple((s, root) for s in root_factors), kbound,
                          tuple(ks), ok, None if ok else "D(k) exceeds its degree bound")


def hvar(m: ParametricMap) -> MultiPoly:
    return MultiPoly.var(m.vs, "h")


def forward_shape(m: ParametricMap, pullback: MultiPoly | None = None) -> CertifiedShape:
    """det jac = D(k) h^(width-2) S^n [LR(S)^n], certified."""
    n = m.n
    if m.family == ONE_SIDED:
        return certified_shape(m, [(hvar(m), n - 1)], n,
                               root_factors=None if pullback is None else [pullback])
    if pullback is None:
        raise ValueError("the two-sided shape needs the pulled-back hypersurface")
    return certified_shape(m, [(hvar(m), 2 * n - 1)], n, root_factors=[pullback, lr_conjugate(pullback)])


def inverse_shape(inv: ParametricMap, structure: InverseStructure) -> CertifiedShape:
    """det jac of the inverse = D(k) Gamma^a [LR(Gamma)^a] S, certified."""
    n = inv.n
    if inv.family == ONE_SIDED:
        hp = [(structure.gamma, n * (n - 1))]
    else:
        a = n * (2 * n - 1)
        hp = [(structure.gamma, a), (structure.gamma_conjugate, a)]
    return certified_shape(inv, hp, 1)


def symbolic_shape(m: ParametricMap, root: int, hyperplanes=(), lr_split=False, candidate=None):
    """factor_shape of the det computed with k symbolic (small cases only)."""
    d = jacobian_det(m)
    return factor_shape(d, hyperplanes, root, lr_split, candidate)


# -- census ------------------------------------------------------------------------


@dataclass(frozen=True)
class CensusRecord:
    k: Fraction
    factors: tuple[tuple[MultiPoly, int], ...]
    d_value: Fraction | None

    def profile(self) -> list[tuple[int, int]]:
        return sorted(((f.degree(), e) for f, e in self.factors), reverse=True)


def _canon(f: MultiPoly) -> MultiPoly:
    return f.primitive_integer()


def _merge(factors: list[tuple[MultiPoly, int]]) -> list[tuple[MultiPoly, int]]:
    acc: dict[MultiPoly, int] = {}
    order = []
    for f, e in factors:
        if f.is_constant() or e == 0:
            continue
        c = _canon(f)
        if c not in acc:
            order.append(c)
            acc[c] = 0
        acc[c] += e
    out = [(f, acc[f]) for f in order]
    out.sort(key=lambda fe: (-fe[1], -fe[0].degree(), str(fe[0])))
    return out


def decompose_at(pieces: Sequence[tuple[MultiPoly, int]], strip: Sequence[MultiPoly] = ()):
    """Split specialized factors into squarefree pieces with multiplicities,
    stripping the designated hyperplanes first, and merge proportional ones."""
    out: list[tuple[MultiPoly, int]] = []
    for f, e in pieces:
        if f.is_zero():
            raise ShapeError("factor vanishes identically")
        rest = f
        for hp in strip:
            a, rest = rest.multiplicity(hp)
            if a:
                out.append((hp, a * e))
        for g, i in squarefree_decomposition(rest):
            out.append((g, i * e))
    return _merge(out)


def census(shape: CertifiedShape, ks: Sequence, strip_h: bool = True) -> list[CensusRecord]:
    """Degeneration profile of the certified shape at the given parameter values."""
    recs = []
    for k0 in ks:
        k0 = Fraction(k0)
        pieces = []
        vs = None
        for f, e in list(shape.hyperplanes) + list(shape.roots):
            vs = VarSet(tuple(v for v in f.vs.names if v != "k"))
            pieces.append((_at(f, k0, vs), e))
        strip = [MultiPoly.var(vs, "h")] if strip_h and "h" in vs else []
        recs.append(CensusRecord(k0, tuple(decompose_at(pieces, strip)), ueval(shape.D, k0) if shape.D else None))
    return recs
