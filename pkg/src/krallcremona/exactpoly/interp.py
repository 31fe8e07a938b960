"""Coefficient-wise interpolation in the parameter k."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import MultiPoly, VarSet
from .univariate import newton_interpolate, rational_reconstruct, ueval


class InterpolationError(ValueError):
    pass


def interpolate_poly(samples: Sequence[tuple[object, MultiPoly]], degree_bound: int,
                     var: str = "k") -> MultiPoly:
    """Polynomial in ``var`` of degree <= degree_bound through the samples.

    Sample values must share a variable set that does not contain ``var``.
    The result lives over that variable set extended by ``var`` (appended last).
    Uses exactly degree_bound + 1 samples; extra samples are checked.
    """
    if len(samples) < degree_bound + 1:
        raise InterpolationError(
            f"need {degree_bound + 1} samples for degree {degree_bound}, got {len(samples)}")
    xs = [Fraction(x) for x, _ in samples]
    if len(set(xs)) != len(xs):
        raise InterpolationError("sample abscissae must be distinct")
    vals = [v for _, v in samples]
    vs = vals[0].vs
    for v in vals[1:]:
        if v.vs is not vs:
            raise InterpolationError("sample values must share a variable set")
    if var in vs:
        raise InterpolationError(f"sample values already involve {var}")
    out_vs = VarSet(vs.names + (var,))
    used = degree_bound + 1
    monos = sorted(set().union(*(v.num.keys() for v in vals[:used])))
    kunit = out_vs.var_unit(len(out_vs) - 1)
    result: dict[int, Fraction] = {}
    for m in monos:
        ys = [v.coeff_packed(m) for v in vals[:used]]
        coeffs = newton_interpolate(xs[:used], ys)
        base = out_vs.pack(vs.unpack(m) + (0,))
        for e, c in enumerate(coeffs):
            if c:
                result[base + e * kunit] = c
    poly = MultiPoly.from_packed(out_vs, result)
    for x, v in samples[used:]:
        if poly.subs({var: x}).restrict(vs) != v:
            raise InterpolationError(f"sample at {var}={x} is not matched at degree {degree_bound}")
    return poly


def interpolate_values(xs: Sequence, ys: Sequence) -> list[Fraction]:
    return newton_interpolate(xs, ys)


def reconstruct_rational(xs: Sequence, ys: Sequence, check_xs: Sequence = (),
                         check_ys: Sequence = ()):
    """Rational function num/den (lists) through (xs, ys) that also matches the
    check points, or None."""
    for num, den in rational_reconstruct(xs, ys):
        ok = True
        for x in xs:
            if ueval(den, x) == 0:
                ok = False
                break
        if not ok:
            continue
        for x, y in zip(check_xs, check_ys):
            d = ueval(den, x)
            if d == 0 or ueval(num, x) / d != y:
                ok = False
                break
        if ok:
            return num, den
    return None
