"""Projective maps: specialization, composition, Jacobians and symmetries."""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from ..exactpoly.gcd import coefficients_in, gcd_many, to_upoly
from ..exactpoly.linalg import PolyMatrix, det
from ..exactpoly.poly import MultiPoly, VarSet, compose as poly_compose
from ..exactpoly.univariate import ucompose_linear
from ..orthobasis import ONE_SIDED
from ..paramlift import ParametricMap


class DegenerateMapError(ValueError):
    """All components vanish after specialization."""


@dataclass(frozen=True)
class FixedMap:
    """Homogeneous components over one variable set (no parameter k)."""

    components: tuple[MultiPoly, ...]

    @property
    def vs(self) -> VarSet:
        return self.components[0].vs

    @property
    def degree(self) -> int:
        return max(c.degree() for c in self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, FixedMap) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def is_homogeneous(self) -> bool:
        d = self.degree
        return all(c.is_zero() or (c.is_homogeneous() and c.degree() == d) for c in self.components)


def proj_varset(names: Sequence[str]) -> VarSet:
    return VarSet(tuple(names))


def j_names(count: int) -> tuple[str, ...]:
    return tuple(f"j{i}" for i in range(count))


def remove_joint_gcd(comps: Sequence[MultiPoly]) -> list[MultiPoly]:
    nz = [c for c in comps if c]
    if not nz:
        raise DegenerateMapError("all components vanish")
    g = gcd_many(nz)
    if g.is_constant():
        return list(comps)
    return [c.divexact(g) if c else c for c in comps]


def canonical(F: FixedMap) -> FixedMap:
    """Primitive integer representative with the first nonzero component's
    leading coefficient positive."""
    from ..exactpoly.linalg import normalize_vector
    return FixedMap(tuple(normalize_vector(remove_joint_gcd(F.components))))


def specialize(m: ParametricMap, k0) -> FixedMap:
    """Substitute k = k0 and divide by the joint polynomial gcd.

    The rational scale of the parametric normalization is kept, so unit
    constant terms stay visible.
    """
    k0 = Fraction(k0)
    pvs = VarSet(m.proj_vars)
    comps = [c.subs({"k": k0}).restrict(pvs) for c in m.components]
    comps = remove_joint_gcd(comps)
    first = next(c for c in comps if c)
    if first.lc() < 0:
        comps = [-c for c in comps]
    return FixedMap(tuple(comps))


def specialize_raw(m, k0) -> FixedMap:
    """Substitute k = k0 without any gcd removal."""
    k0 = Fraction(k0)
    pvs = VarSet(tuple(n for n in m.components[0].vs.names if n != "k"))
    return FixedMap(tuple(c.subs({"k": k0}).restrict(pvs) for c in m.components))


def compose(outer: FixedMap, inner: FixedMap) -> FixedMap:
    """outer o inner, joint gcd removed, canonical sign."""
    if len(outer.vs) != len(inner):
        raise ValueError(f"arity mismatch: {len(outer.vs)} variables vs {len(inner)} components")
    comps = [poly_compose(c, list(inner.components), inner.vs) for c in outer.components]
    comps = remove_joint_gcd(comps)
    first = next(c for c in comps if c)
    if first.lc() < 0:
        comps = [-c for c in comps]
    return FixedMap(tuple(comps))


def compose_raw(outer: FixedMap, inner: FixedMap) -> list[MultiPoly]:
    return [poly_compose(c, list(inner.components), inner.vs) for c in outer.components]


def identity_map(names: Sequence[str]) -> FixedMap:
    vs = VarSet(tuple(names))
    return FixedMap(tuple(MultiPoly.var(vs, n) for n in names))


def jacobian_matrix(components: Sequence[MultiPoly], names: Sequence[str]) -> PolyMatrix:
    return PolyMatrix([[c.derivative(v) for v in names] for c in components], components[0].vs)


def jacobian_det(F, names: Sequence[str] | None = None) -> MultiPoly:
    """Determinant of the Jacobian with respect to the projective variables."""
    if isinstance(F, ParametricMap):
        comps, names = F.components, names or F.proj_vars
    else:
        comps = F.components
        names = names or F.vs.names
    if len(comps) != len(names):
        raise ValueError("Jacobian is not square")
    return det(jacobian_matrix(comps, names))


# -- symmetries -------------------------------------------------------------


def subs_k_affine(p: MultiPoly, s, t, var: str = "k") -> MultiPoly:
    """p with var replaced by s*var + t (coefficient-wise Taylor shift)."""
    if var not in p.vs or p.degree_in(var) <= 0:
        return p
    vs = p.vs
    others = [n for n in vs.names if n != var]
    ki = vs.index[var]
    kunit = vs.var_unit(ki)
    out = MultiPoly.zero(vs)
    acc: dict[int, Fraction] = {}
    for mono, coeff in coefficients_in(p, others).items():
        u = to_upoly(coeff, var)
        shifted = ucompose_linear(u, Fraction(s), Fraction(t))
        e = [0] * len(vs)
        for n, x in zip(others, mono):
            e[vs.index[n]] = x
        base = vs.pack(e)
        for i, c in enumerate(shifted):
            if c:
                acc[base + i * kunit] = c
    out = MultiPoly.from_packed(vs, acc)
    return out


def reflection_point(family: str, n: int) -> tuple[int, int]:
    """(s, t) with R(k) = s*k + t."""
    return (-1, -n - 1) if family == ONE_SIDED else (-1, -1)


def reflect_in_k(m: ParametricMap, shift: int | None = None) -> ParametricMap:
    """Substitute k -> -n-1-k (one-sided) or k -> -1-k (two-sided);
    ``shift`` overrides the constant t in k -> t - k."""
    s, t = reflection_point(m.family, m.n)
    if shift is not None:
        t = shift
    return replace(m, components=tuple(subs_k_affine(c, s, t) for c in m.components))


def reverse_components(F):
    if isinstance(F, ParametricMap):
        return replace(F, components=tuple(reversed(F.components)))
    return FixedMap(tuple(reversed(F.components)))


def _lr_permutation(vs: VarSet) -> list[int] | None:
    perm = list(range(len(vs)))
    touched = False
    for i, n in enumerate(vs.names):
        if n[0] in "lr" and n[1:].isdigit():
            other = ("r" if n[0] == "l" else "l") + n[1:]
            if other in vs.index:
                perm[i] = vs.index[other]
                touched = True
    return perm if touched else None


def lr_conjugate_poly(p: MultiPoly) -> MultiPoly:
    """Swap l_i <-> r_i, and send j_i -> (-1)^i j_i."""
    vs = p.vs
    perm = _lr_permutation(vs)
    jodd = [i for i, n in enumerate(vs.names) if n[0] == "j" and n[1:].isdigit() and int(n[1:]) % 2]
    out = {}
    for m, c in p.num.items():
        e = vs.unpack(m)
        if perm is not None:
            f = [0] * len(e)
            for i, x in enumerate(e):
                f[perm[i]] = x
            m2 = vs.pack(f)
        else:
            m2 = m
        if jodd and sum(e[i] for i in jodd) % 2:
            c = -c
        out[m2] = c
    return MultiPoly(vs, out, p.den, normalized=True)


def lr_conjugate(obj):
    """LR action on a polynomial, a FixedMap or a ParametricMap (componentwise)."""
    if isinstance(obj, MultiPoly):
        return lr_conjugate_poly(obj)
    if isinstance(obj, FixedMap):
        return FixedMap(tuple(lr_conjugate_poly(c) for c in obj.components))
    if isinstance(obj, ParametricMap):
        return replace(obj, components=tuple(lr_conjugate_poly(c) for c in obj.components))
    raise TypeError(type(obj))


def proportional(a: Sequence[MultiPoly], b: Sequence[MultiPoly]) -> bool:
    """True if the component vectors agree projectively (scalar may involve k)."""
    if len(a) != len(b):
        return False
    ref = next((i for i, x in enumerate(a) if x), None)
    if ref is None or not b[ref]:
        return all(not y for y in b) and ref is None
    pa, pb = a[ref], b[ref]
    m = pa.leading_monomial()
    names = [n for n in pa.vs.names if n != "k"]
    ca = coefficients_in(pa, names)
    cb = coefficients_in(pb.embed(pa.vs), names)
    key = pa.vs.unpack(m)
    key = tuple(key[pa.vs.index[n]] for n in names)
    sa, sb = ca.get(key), cb.get(key)
    if sa is None or sb is None:
        return False
    for x, y in zip(a, b):
        if x * sb != y * sa:
            return False
    return True
