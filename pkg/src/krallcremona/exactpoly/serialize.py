"""Canonical JSON and plain-text rendering of polynomials."""
from __future__ import annotations

import json
from fractions import Fraction

from .poly import MultiPoly, VarSet


def frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def parse_frac(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den or 1))


def poly_to_obj(p: MultiPoly) -> dict:
    vs = p.vs
    d = p.den
    terms = [{"e": list(vs.unpack(m)), "c": frac_str(Fraction(p.num[m], d))}
             for m in p.monomials()]
    return {"vars": list(vs.names), "terms": terms}


def poly_from_obj(obj: dict) -> MultiPoly:
    vs = VarSet(obj["vars"])
    return MultiPoly.from_terms(vs, {tuple(t["e"]): parse_frac(t["c"]) for t in obj["terms"]})


def dumps(obj) -> str:
    """Deterministic JSON text for nested report/poly objects."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def poly_dumps(p: MultiPoly) -> str:
    return dumps(poly_to_obj(p))


def poly_loads(s: str) -> MultiPoly:
    return poly_from_obj(json.loads(s))


def _mono_text(vs: VarSet, m: int) -> str:
    parts = []
    for name, e in zip(vs.names, vs.unpack(m)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def to_text(p: MultiPoly) -> str:
    """Readable form, terms in descending graded-lex order."""
    if p.is_zero():
        return "0"
    out = []
    for m in p.monomials():
        c = Fraction(p.num[m], p.den)
        mono = _mono_text(p.vs, m)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{_ctext(a)}*{mono}"
        else:
            body = _ctext(a)
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def _ctext(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
