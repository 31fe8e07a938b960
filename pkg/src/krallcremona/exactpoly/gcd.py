"""Greatest common divisors, contents and primitive parts.

The multivariate gcd first looks for a cheap proof that the gcd is trivial
(random evaluation down to one variable at a time) and otherwise falls back to
a recursive primitive pseudo-remainder sequence. Every nontrivial answer is
checked by exact division before it is returned.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import reduce
from typing import Iterable

from .poly import MultiPoly, VarSet
from .univariate import UPoly, ugcd, utrim


class GcdVerificationError(ArithmeticError):
    pass


def to_upoly(p: MultiPoly, var: str) -> UPoly:
    """Coefficient list of a polynomial that involves only ``var``."""
    vs = p.vs
    i = vs.index[var]
    out: dict[int, Fraction] = {}
    for m in p.num:
        e = vs.unpack(m)
        if any(x for j, x in enumerate(e) if j != i):
            raise ValueError(f"polynomial is not univariate in {var}")
    deg = p.degree_in(var) if p else -1
    out = [Fraction(0)] * (deg + 1)
    for m, c in p.num.items():
        out[vs.exponent(m, i)] = Fraction(c, p.den)
    return utrim(out)


def from_upoly(coeffs: UPoly, vs: VarSet, var: str) -> MultiPoly:
    i = vs.index[var]
    u = vs.var_unit(i)
    return MultiPoly.from_packed(vs, {e * u: c for e, c in enumerate(coeffs) if c})


def coefficients_in(p: MultiPoly, main_vars: Iterable[str]) -> dict[tuple[int, ...], MultiPoly]:
    """Split p as sum over main-variable monomials of coefficient polynomials
    (which live over the same variable set but avoid the main variables)."""
    vs = p.vs
    idx = [vs.index[v] for v in main_vars if v in vs.index]
    buckets: dict[tuple[int, ...], dict[int, int]] = {}
    for m, c in p.num.items():
        e = list(vs.unpack(m))
        key = tuple(e[i] for i in idx)
        for i in idx:
            e[i] = 0
        buckets.setdefault(key, {})[vs.pack(e)] = c
    return {k: MultiPoly(vs, d, p.den) for k, d in buckets.items()}


def _normal(p: MultiPoly) -> MultiPoly:
    return p.primitive_integer()


def _one(vs: VarSet) -> MultiPoly:
    return MultiPoly.const(vs, 1)


def multivariate_gcd(a: MultiPoly, b: MultiPoly, *, seed: int = 12345) -> MultiPoly:
    """Primitive integer gcd with positive leading coefficient, verified by division."""
    if a.vs is not b.vs:
        a, b = a._align(b)
    vs = a.vs
    if a.is_zero():
        return _normal(b)
    if b.is_zero():
        return _normal(a)
    if a.is_constant() or b.is_constant():
        return _one(vs)
    common = set(a.variables()) & set(b.variables())
    if not common:
        return _one(vs)
    rng = random.Random(seed)
    live = [v for v in vs.names if v in common and not _trivial_in(a, b, v, rng)]
    if not live:
        return _one(vs)
    g = _gcd_rec(_normal(a), _normal(b), live)
    g = _normal(g)
    if a.try_divide(g) is None or b.try_divide(g) is None:
        raise GcdVerificationError("gcd candidate failed verified division")
    return g


def _trivial_in(a: MultiPoly, b: MultiPoly, v: str, rng: random.Random) -> bool:
    """True if a random specialization of the other variables proves that the
    gcd does not involve v (leading coefficients in v must survive)."""
    others = [n for n in set(a.variables()) | set(b.variables()) if n != v]
    da, db = a.degree_in(v), b.degree_in(v)
    for _ in range(3):
        pt = {n: rng.randint(-997, 997) for n in others}
        ua = to_upoly(a.subs(pt), v) if others else to_upoly(a, v)
        ub = to_upoly(b.subs(pt), v) if others else to_upoly(b, v)
        if len(ua) - 1 != da or len(ub) - 1 != db:
            continue
        return len(ugcd(ua, ub)) == 1
    return False


def _as_upoly_in(p: MultiPoly, v: str) -> dict[int, MultiPoly]:
    return {k[0]: c for k, c in coefficients_in(p, [v]).items()}


def _from_upoly_in(d: dict[int, MultiPoly], v: str, vs: VarSet) -> MultiPoly:
    x = MultiPoly.var(vs, v)
    acc = MultiPoly.zero(vs)
    for e, c in d.items():
        acc = acc + c * x ** e
    return acc


def _content_in(p: MultiPoly, v: str, live: list[str]) -> MultiPoly:
    coeffs = list(_as_upoly_in(p, v).values())
    return reduce(lambda x, y: _gcd_rec(x, y, live), coeffs[1:], _normal(coeffs[0]))


def _gcd_rec(a: MultiPoly, b: MultiPoly, live: list[str]) -> MultiPoly:
    vs = a.vs
    if a.is_zero():
        return _normal(b)
    if b.is_zero():
        return _normal(a)
    if a.is_constant() or b.is_constant():
        return _one(vs)
    cand = [v for v in live if a.degree_in(v) > 0 and b.degree_in(v) > 0]
    if not cand:
        return _one(vs)
    v = cand[0]
    sub_live = [w for w in live if w != v]
    # contents may involve variables outside ``live``; give them a chance too
    sub_live += [w for w in vs.names if w not in live]
    ca = _content_in(a, v, sub_live)
    cb = _content_in(b, v, sub_live)
    cg = _gcd_rec(ca, cb, sub_live)
    pa = a.divexact(ca)
    pb = b.divexact(cb)
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    while not pb.is_zero() and pb.degree_in(v) > 0:
        r = _prem(pa, pb, v)
        if r.is_zero():
            break
        if r.degree_in(v) == 0:
            pb = _one(vs)
            break
        r = r.divexact(_content_in(r, v, sub_live))
        pa, pb = pb, _normal(r)
    if pb.degree_in(v) == 0:
        g = _one(vs)
    else:
        g = pb.divexact(_content_in(pb, v, sub_live))
    return _normal(cg * g)


def _prem(a: MultiPoly, b: MultiPoly, v: str) -> MultiPoly:
    """Pseudo-remainder of a by b with respect to v."""
    db = b.degree_in(v)
    bd = _as_upoly_in(b, v)
    lb = bd[db]
    x = MultiPoly.var(a.vs, v)
    r = a
    while not r.is_zero() and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lr = _as_upoly_in(r, v)[dr]
        r = r * lb - (lr * x ** (dr - db)) * b
    return r


def content_primitive(p: MultiPoly, main_vars: Iterable[str]) -> tuple[MultiPoly, MultiPoly]:
    """(content, primitive) with p = content * primitive.

    The content is the gcd of the coefficients of p viewed as a polynomial in
    ``main_vars`` (a polynomial in the remaining variables, rational scalar
    included, leading coefficient positive); the primitive part has trivial
    content and coprime integer coefficients.
    """
    main_vars = list(main_vars)
    vs = p.vs
    if p.is_zero():
        return MultiPoly.zero(vs), MultiPoly.zero(vs)
    coeffs = list(coefficients_in(p, main_vars).values())
    g = coeffs[0].primitive_integer()
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = multivariate_gcd(g, c)
    prim = p.divexact(g).primitive_integer()
    content = p.divexact(prim)
    return content, prim


def gcd_many(polys: Iterable[MultiPoly]) -> MultiPoly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of nothing")
    g = polys[0].primitive_integer()
    for p in polys[1:]:
        if g.is_constant():
            return g
        g = multivariate_gcd(g, p)
    return g


def lcm_upoly(a: UPoly, b: UPoly) -> UPoly:
    from .univariate import udivmod, umul
    g = ugcd(a, b)
    q, _ = udivmod(umul(a, b), g)
    return q
