"""Perfect-power roots of multivariate polynomials and rational roots in k."""
from __future__ import annotations

import math
from fractions import Fraction

import gmpy2

from .poly import MultiPoly
from .univariate import UPoly, udivmod, ueval, utrim


class NotPerfectPower:
    """Failure marker returned by :func:`nth_root`."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "NOT_PERFECT_POWER"

    def __bool__(self) -> bool:
        return False


NOT_PERFECT_POWER = NotPerfectPower()


def _iroot_exact(v: int, m: int):
    if v < 0:
        if m % 2 == 0:
            return None
        r = _iroot_exact(-v, m)
        return None if r is None else -r
    r, exact = gmpy2.iroot(v, m)
    return int(r) if exact else None


def _rational_root(c: Fraction, m: int):
    a = _iroot_exact(c.numerator, m)
    b = _iroot_exact(c.denominator, m)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def nth_root(p: MultiPoly, m: int):
    """q with q**m == p and positive leading coefficient, or NOT_PERFECT_POWER.

    Coefficients are matched from the leading monomial downwards: with q
    known above the current monomial, the next term of q is read off from the
    leading term of p - q**m divided by m*lc(q)**(m-1)*lm(q).
    """
    if m < 1:
        raise ValueError("root index must be positive")
    if m == 1:
        return p if p.is_zero() or p.lc() > 0 else -p
    if p.is_zero():
        return p
    vs = p.vs
    lm = p.leading_monomial()
    g = vs.guard
    # leading monomial exponents must all be divisible by m
    exps = vs.unpack(lm)
    if any(e % m for e in exps):
        return NOT_PERFECT_POWER
    lc = _rational_root(p.lc(), m)
    if lc is None:
        return NOT_PERFECT_POWER
    if lc < 0:
        lc = -lc
        if m % 2 == 0:
            return NOT_PERFECT_POWER
    qlm = vs.pack([e // m for e in exps])
    if p.lc() < 0:
        lc = -lc  # odd m, negative lead
    q = MultiPoly.from_packed(vs, {qlm: lc})
    denom = m * lc ** (m - 1)
    # the lowest monomial of p bounds the lowest monomial of q
    pmin = min(p.num)
    while True:
        r = p - q ** m
        if r.is_zero():
            break
        rm = r.leading_monomial()
        if ((rm | g) - (m - 1) * qlm) & g != g:
            return NOT_PERFECT_POWER
        tm = rm - (m - 1) * qlm
        if tm >= min(q.num) or m * tm < pmin:
            return NOT_PERFECT_POWER
        q = q + MultiPoly.from_packed(vs, {tm: r.lc() / denom})
    if q.lc() < 0:
        q = -q
    return q


def rational_roots(u: UPoly):
    """Rational roots of a univariate polynomial (coefficients low first).

    Returns (roots, cofactor): ``roots`` is a sorted list of (root, multiplicity)
    and ``cofactor`` is u divided by the product of the corresponding linear
    factors (denominators cleared, positive leading coefficient).
    """
    u = utrim(u)
    if not u:
        raise ValueError("rational_roots of the zero polynomial")
    roots: list[tuple[Fraction, int]] = []
    # strip zero roots
    mult0 = 0
    while u and u[0] == 0:
        u = u[1:]
        mult0 += 1
    if mult0:
        roots.append((Fraction(0), mult0))
    ints = _integer_coeffs(u)
    found: dict[Fraction, int] = {}
    while len(ints) > 1:
        r = _find_root(ints)
        if r is None:
            break
        p, q = r.numerator, r.denominator
        quo, rem = udivmod([Fraction(c) for c in ints], [Fraction(-p), Fraction(q)])
        assert not rem
        ints = _integer_coeffs(quo)
        found[r] = found.get(r, 0) + 1
    roots.extend(found.items())
    roots.sort()
    return roots, [Fraction(c) for c in ints]


def _integer_coeffs(u: UPoly) -> list[int]:
    fr = [Fraction(c) for c in u]
    d = math.lcm(*(c.denominator for c in fr))
    ints = [int(c * d) for c in fr]
    g = math.gcd(*ints)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _small_divisors(n: int, limit: int = 10**6):
    n = abs(n)
    if n == 0:
        return None
    if n > 10**24:
        return None
    divs = {1}
    m = n
    p = 2
    fac = []
    while p * p <= m and p < limit:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            fac.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        if m > limit * limit:
            return None
        fac.append((m, 1))
    for p, e in fac:
        divs = {d * p ** i for d in divs for i in range(e + 1)}
    return sorted(divs)


def _find_root(ints: list[int]):
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        return Fraction(0)
    ps = _small_divisors(a0)
    qs = _small_divisors(an)
    if ps is not None and qs is not None and len(ps) * len(qs) <= 200000:
        for q in qs:
            for p in ps:
                for s in (p, -p):
                    if math.gcd(p, q) != 1:
                        continue
                    r = Fraction(s, q)
                    if ueval(ints, r) == 0:
                        return r
        return None
    return _numeric_root(ints)


def _numeric_root(ints: list[int]):
    import numpy as np
    try:
        cand = np.roots([float(c) for c in reversed(ints)])
    except (OverflowError, ValueError):
        return None
    for z in cand:
        if abs(z.imag) > 1e-6:
            continue
        r = Fraction(float(z.real)).limit_denominator(10**6)
        if ueval(ints, r) == 0:
            return r
    return None


def squarefree_decomposition(p: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Pairs (a_i, i) with p = c * prod a_i**i, each a_i squarefree and the
    a_i pairwise coprime. Uses gcd(p, all partial derivatives), which in
    characteristic zero is prod f**(e-1) over the irreducible factors."""
    from .gcd import gcd_many
    if p.is_zero():
        raise ValueError("squarefree decomposition of zero")
    if p.is_constant():
        return []
    parts = [p] + [p.derivative(v) for v in p.variables()]
    y = gcd_many(parts)
    w = p.divexact(y).primitive_integer()
    out = []
    i = 1
    while not w.is_constant():
        z = gcd_many([w, y]) if not y.is_constant() else MultiPoly.const(p.vs, 1)
        a = w.divexact(z).primitive_integer()
        if not a.is_constant():
            out.append((a, i))
        w = z
        y = y.divexact(z) if not z.is_constant() else y
        i += 1
    return out
