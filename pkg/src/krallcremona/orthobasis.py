"""Jacobi polynomials and the distributional inner products of the two families.

A weight is described by :class:`WeightSpec`. Its pairing is linear in the
product p*q, so everything reduces to the moments L(x^a), each of which is an
affine form in the Dirac parameters l_i (and r_i).

Conventions: the Dirac derivative integrates as
int f(x) delta^(i)(1+x) dx = (-1)^i f^(i)(-1) and int f(x) delta^(i)(1-x) dx = f^(i)(1),
both with full mass.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exactpoly.poly import MultiPoly, VarSet

ONE_SIDED = "one"
TWO_SIDED = "two"
FAMILIES = (ONE_SIDED, TWO_SIDED)


@dataclass(frozen=True)
class WeightSpec:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be positive")

    @property
    def params(self) -> tuple[str, ...]:
        """Names of the Dirac parameters, in projective-coordinate order."""
        ls = tuple(f"l{i}" for i in range(self.n))
        if self.family == ONE_SIDED:
            return ls
        return ls + tuple(f"r{i}" for i in range(self.n))

    @property
    def width(self) -> int:
        """Number of basis polynomials in the expansion (n+1 or 2n+1)."""
        return self.n + 1 if self.family == ONE_SIDED else 2 * self.n + 1


@lru_cache(maxsize=None)
def jacobi_coeffs(deg: int, alpha: int, beta: int) -> tuple[Fraction, ...]:
    """Coefficients (low degree first) of the standard Jacobi polynomial."""
    if deg < 0:
        return ()
    if deg == 0:
        return (Fraction(1),)
    if deg == 1:
        return (Fraction(alpha - beta, 2), Fraction(alpha + beta + 2, 2))
    a, b, m = alpha, beta, deg
    s = 2 * m + a + b
    c0 = 2 * m * (m + a + b) * (s - 2)
    c1 = (s - 1) * s * (s - 2)
    c2 = (s - 1) * (a * a - b * b)
    c3 = 2 * (m + a - 1) * (m + b - 1) * s
    p1 = jacobi_coeffs(m - 1, a, b)
    p2 = jacobi_coeffs(m - 2, a, b)
    out = [Fraction(0)] * (m + 1)
    for i, c in enumerate(p1):
        out[i + 1] += c1 * c
        out[i] += c2 * c
    for i, c in enumerate(p2):
        out[i] -= c3 * c
    return tuple(c / c0 for c in out)


_X = VarSet(("x",))


def _xpoly(coeffs) -> MultiPoly:
    u = _X.var_unit(0)
    return MultiPoly.from_packed(_X, {i * u: c for i, c in enumerate(coeffs) if c})


def jacobi(deg: int, alpha: int, beta: int) -> MultiPoly:
    """P_deg^(alpha, beta)(x); the zero polynomial for negative degree."""
    return _xpoly(jacobi_coeffs(deg, alpha, beta))


def symmetric_jacobi(deg: int, n: int) -> MultiPoly:
    return jacobi(deg, n, n)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _eval_deriv(coeffs, order: int, at: int) -> Fraction:
    total = Fraction(0)
    for a, c in enumerate(coeffs):
        if a < order or not c:
            continue
        f = 1
        for t in range(order):
            f *= a - t
        total += c * f * Fraction(at) ** (a - order)
    return total


@lru_cache(maxsize=None)
def _moment(w: WeightSpec, a: int) -> tuple[Fraction, ...]:
    """L(x^a) as (constant, coefficient of each Dirac parameter)."""
    n = w.n
    if w.family == ONE_SIDED:
        base = [Fraction(comb(n, t) * (-1) ** t) for t in range(n + 1)]  # (1-x)^n
        f = [Fraction(0)] * a + base  # x^a (1-x)^n
        integral = sum((c * Fraction(2, e + 1) for e, c in enumerate(f) if e % 2 == 0), Fraction(0))
        lcoef = [(-1) ** i * _eval_deriv(f, i, -1) for i in range(n)]
        return (integral, *lcoef)
    f = [Fraction(0)] * a + [Fraction(1)]
    integral = Fraction(2, a + 1) if a % 2 == 0 else Fraction(0)
    lcoef = [(-1) ** i * _eval_deriv(f, i, -1) for i in range(n)]
    rcoef = [_eval_deriv(f, i, 1) for i in range(n)]
    return (integral, *lcoef, *rcoef)


def moment(w: WeightSpec, a: int) -> tuple[Fraction, ...]:
    return _moment(w, a)


def functional_coeffs(w: WeightSpec, coeffs) -> list[Fraction]:
    """L applied to the x-polynomial with the given coefficients (low first)."""
    out = [Fraction(0)] * (1 + len(w.params))
    for a, c in enumerate(coeffs):
        if c:
            for t, v in enumerate(_moment(w, a)):
                if v:
                    out[t] += c * v
    return out


def pairing(p: MultiPoly, q: MultiPoly, w: WeightSpec) -> MultiPoly:
    """Pairing of two polynomials in x under the weight ``w``.

    Coefficients of p and q may involve other variables; the result is over
    their variables with x removed, extended by the Dirac parameters.
    """
    a, b = p._align(q)
    prod = a * b
    vs = prod.vs
    if "x" not in vs:
        raise ValueError("pairing expects polynomials in x")
    rest = [name for name in vs.names if name != "x"]
    params = [name for name in w.params if name not in rest]
    out_vs = VarSet(tuple(rest) + tuple(params))
    xi = vs.index["x"]
    groups: dict[int, dict[int, Fraction]] = {}
    for m, c in prod.num.items():
        e = list(vs.unpack(m))
        xe = e[xi]
        del e[xi]
        key = out_vs.pack(e + [0] * len(params))
        groups.setdefault(key, {})[xe] = Fraction(c, prod.den)
    pvars = [MultiPoly.var(out_vs, name) for name in w.params]
    result = MultiPoly.zero(out_vs)
    for key, xcoeffs in groups.items():
        deg = max(xcoeffs)
        lin = functional_coeffs(w, [xcoeffs.get(i, 0) for i in range(deg + 1)])
        form = MultiPoly.const(out_vs, lin[0])
        for t, pv in enumerate(pvars):
            if lin[t + 1]:
                form = form + pv.scale(lin[t + 1])
        result = result + form.mul_monomial(key)
    return result
