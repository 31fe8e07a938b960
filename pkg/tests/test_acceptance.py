"""Acceptance criteria 1-8, one pass/fail line each (see the terminal summary).

Every comparison is exact. Printed closed forms live in ``printed.py``; the
coordinate rescaling between printed and computed maps is derived by
``calibrate`` and reported, never assumed.
"""
from __future__ import annotations

import time
from fractions import Fraction

import pytest

import printed
from conftest import pipeline, record_criterion
from krallcremona import conjectures as cj
from krallcremona.cli import JobSpec, run
from krallcremona.cremona import check_inverse, invert, proportional, specialize
from krallcremona.cremona.shapes import census
from krallcremona.exactpoly import MultiPoly, VarSet, compose, content_primitive, poly_from_obj
from krallcremona.exactpoly.gcd import coefficients_in
from krallcremona.krall import expansion_at_k, orthogonality_suite
from krallcremona.paramlift import k_degree_bound, map_degree

pytestmark = pytest.mark.slow

ONE_NS = (1, 2, 3, 4)
TWO_NS = (1, 2)
BUDGET = {("one", 1): 10, ("one", 2): 10, ("one", 3): 300, ("one", 4): 3600,
          ("two", 1): 10, ("two", 2): 3600}


class Checks:
    """Collects named sub-checks so a criterion reports everything it saw."""

    def __init__(self):
        self.items: list[tuple[str, bool]] = []

    def __call__(self, name: str, ok) -> bool:
        self.items.append((name, bool(ok)))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.items)

    def summary(self) -> str:
        bad = [name for name, ok in self.items if not ok]
        return f"{len(self.items) - len(bad)}/{len(self.items)} checks" + (f"; failed: {', '.join(bad)}" if bad else "")


def finish(number: int, checks: Checks, extra: str = "") -> None:
    record_criterion(number, checks.ok, checks.summary() + (f"; {extra}" if extra else ""))
    assert checks.ok, checks.summary()


def cal_text(cal) -> str:
    if cal is None:
        return "calibration failed"
    scales = ", ".join(f"{k}->{v}*{k}" for k, v in cal[0].items())
    return f"calibration {scales}; component factors [{', '.join(str(f) for f in cal[1])}]"


def proj_of(p: MultiPoly) -> list[str]:
    return [v for v in p.vs.names if v != "k"]


def same_hypersurface(a: MultiPoly, b: MultiPoly) -> bool:
    """Equal up to a factor in Q(k): primitive parts agree up to sign."""
    vs = a.vs if len(a.vs) >= len(b.vs) else b.vs
    a, b = a.embed(vs), b.embed(vs)
    pa = content_primitive(a, proj_of(a))[1]
    pb = content_primitive(b, proj_of(b))[1]
    return pa == pb or pa == -pb


def rescale(p: MultiPoly, scales: dict) -> MultiPoly:
    """p(c l): substitute l_i -> c_i l_i."""
    vs = p.vs
    images = [MultiPoly.var(vs, v).scale(scales.get(v, 1)) for v in vs.names]
    return compose(p, images, vs)


def forward_time(family: str, n: int) -> float:
    p = pipeline(family, n)
    t = time.perf_counter()
    p.forward
    return p.stages.get("forward", time.perf_counter() - t)


def construct(family: str, n: int) -> list[MultiPoly]:
    p = pipeline(family, n)
    return list(p.forward.components)


def proj_monomials(c: MultiPoly) -> int:
    return len(coefficients_in(c, proj_of(c)))


# -- 1 ----------------------------------------------------------------------------------


def test_criterion_1_one_sided_printed_maps():
    chk = Checks()
    times = {n: forward_time("one", n) for n in ONE_NS}
    for n, t in times.items():
        chk(f"runtime n={n} {t:.1f}s", t < BUDGET[("one", n)])
    out, code = run(JobSpec("construct", "one", 1, use_cache=False))
    import json
    comps = [poly_from_obj(c) for c in json.loads(out)["components"]]
    chk("A1 exact", [c.embed(printed.one_n1()[0].vs) for c in comps] == printed.one_n1())
    cal = cj.calibrate(printed.one_n2_printed_coordinates(), construct("one", 2), ["l0", "l1"])
    chk("A2 after calibration", cal is not None)
    scales_note = "n=2 " + cal_text(cal)
    for n in (3, 4):
        comps = construct("one", n)
        for idx, terms in printed.one_leading_terms(n).items():
            table = coefficients_in(comps[idx], proj_of(comps[idx]))
            for mono, coeff in terms:
                key = next(iter(coefficients_in(mono, proj_of(mono))))
                got = table.get(key)
                want = coeff if isinstance(coeff, MultiPoly) else MultiPoly.const(mono.vs, coeff)
                chk(f"n={n} component {idx} term {key}", got is not None and got.embed(want.vs) == want)
        kdeg, mons = printed.ONE_SIDED_SHAPE[n]
        chk(f"n={n} k-degree {kdeg}", pipeline("one", n).forward.degree_in_k() == kdeg)
        chk(f"n={n} monomial counts {mons}", all(proj_monomials(c) == mons for c in comps))
    finish(1, chk, scales_note + "; runtimes " + ", ".join(f"n={n}: {t:.1f}s" for n, t in times.items()))


# -- 2 ----------------------------------------------------------------------------------


def test_criterion_2_two_sided_printed_maps():
    chk = Checks()
    times = {n: forward_time("two", n) for n in TWO_NS}
    for n, t in times.items():
        chk(f"runtime n={n} {t:.1f}s", t < BUDGET[("two", n)])
    chk("B1 exact", construct("two", 1) == printed.two_n1())
    comps = construct("two", 2)
    cal = cj.calibrate(printed.two_n2(), comps, ["l0", "l1", "r0", "r1"])
    chk("B2 after calibration", cal is not None)
    for idx, (kdeg, mons) in printed.TWO_N2_SHAPE.items():
        chk(f"B2 component {idx} k-degree {kdeg}", comps[idx].degree_in("k") == kdeg)
        chk(f"B2 component {idx} monomials {mons}", proj_monomials(comps[idx]) == mons)
    finish(2, chk, "n=2 " + cal_text(cal))


# -- 3 ----------------------------------------------------------------------------------


def test_criterion_3_forward_shapes():
    chk = Checks()
    for family, ns in (("one", ONE_NS), ("two", TWO_NS)):
        for n in ns:
            p = pipeline(family, n)
            sh = p.forward_shape
            tag = f"{family} n={n}"
            if not chk(f"{tag} certified", sh.certified):
                continue
            for cid in ("detjac-degree", "h-multiplicity", "S-degree", "S-multiplicity", "D-root-set",
                        "two-components" if family == "one" else "three-components"):
                status, _ = cj.BODIES[cid](p)
                chk(f"{tag} {cid}", status == cj.VERIFIED)
            if family == "one":
                chk(f"{tag} S free of l0", p.S is None or p.S.degree_in("l0") == 0)
            else:
                chk(f"{tag} S-lr-conjugate", cj.BODIES["S-lr-conjugate"](p)[0] == cj.VERIFIED)
    # printed L2 line, one-sided n = 2
    cal = cj.calibrate(printed.one_n2_printed_coordinates(), construct("one", 2), ["l0", "l1"])
    S2 = pipeline("one", 2).S
    chk("A2 line L2", cal is not None and same_hypersurface(rescale(S2, cal[0]), printed.one_n2_L2_printed()))
    # printed leading terms of S
    for family, n in (("one", 3), ("one", 4), ("two", 2)):
        mono, coeff = printed.s_leading(family, n)
        S = pipeline(family, n).S
        key = next(iter(coefficients_in(mono, proj_of(mono))))
        got = coefficients_in(S, proj_of(S)).get(key)
        ok = got is not None and got.embed(coeff.vs).try_divide(coeff) is not None \
            and got.embed(coeff.vs).divexact(coeff).is_constant()
        chk(f"{family} n={n} S leading term", ok)
    finish(3, chk)


# -- 4 ----------------------------------------------------------------------------------


def j_scales(family: str, n: int) -> dict:
    """Printed j_i is factor_i times the computed j_i (factors from the forward calibration)."""
    if (family, n) == ("one", 2):
        cal = cj.calibrate(printed.one_n2_printed_coordinates(), construct("one", 2), ["l0", "l1"])
    elif (family, n) == ("two", 2):
        cal = cj.calibrate(printed.two_n2(), construct("two", 2), ["l0", "l1", "r0", "r1"])
    else:
        return {}
    return {f"j{i}": 1 / f for i, f in enumerate(cal[1])}


INVERSE_CASES = (("one", 1), ("one", 2), ("one", 3), ("two", 1), ("two", 2))
SPOT = (Fraction(7, 3), Fraction(-11, 5), Fraction(9, 2), Fraction(13))


def test_criterion_4_inverses():
    chk = Checks()
    kdeg_note = []
    for family, n in INVERSE_CASES:
        p = pipeline(family, n)
        tag = f"{family} n={n}"
        inv = p.inverse
        d = map_degree(family, n)
        for k0 in SPOT:
            if n >= 3 or (family, n) == ("two", 2):
                if k0 != SPOT[0]:
                    continue
            F = specialize(p.forward, k0)
            G, lam = invert(F, degree=d)
            chk(f"{tag} generic inverse at k={k0}", lam and proportional(G.components, specialize(inv, k0).components))
            chk(f"{tag} composition at k={k0}", check_inverse(specialize(inv, k0), F))
        chk(f"{tag} inverse degree {d}", {c.degree_in_vars(inv.proj_vars) for c in inv.components} == {d})
        kd = inv.degree_in_k()
        kdeg_note.append(f"{tag}: {kd} (bound {k_degree_bound(family, n)})")
        chk(f"{tag} inverse k-degree {kd} <= {k_degree_bound(family, n)}", kd <= k_degree_bound(family, n))
        if (family, n) != ("one", 1):
            chk(f"{tag} gamma matches printed", same_hypersurface(rescale(p.structure.gamma, j_scales(family, n)),
                                                                  printed.gamma(family, n)))
        status, w = cj.BODIES["inverse-shape"](p)
        chk(f"{tag} inverse shape", status == cj.VERIFIED)
    # printed inverse L2 line (one-sided n = 2) and the inverse of two-sided n = 1
    S = pipeline("one", 2).inverse_shape.roots[0][0]
    chk("one n=2 inverse L2", same_hypersurface(S, printed.one_n2_inverse_L2()))
    comps, L1 = printed.two_n1_inverse()
    inv = pipeline("two", 1).inverse
    vs = comps[0].vs
    chk("two n=1 inverse map", proportional([c.embed(vs) for c in inv.components], comps))
    chk("two n=1 inverse L1", same_hypersurface(pipeline("two", 1).inverse_shape.roots[0][0], L1))
    finish(4, chk, "inverse k-degrees " + "; ".join(kdeg_note))


# -- 5 ----------------------------------------------------------------------------------


def test_criterion_5_reflection():
    chk = Checks()
    for family, ns in (("one", ONE_NS), ("two", TWO_NS)):
        for n in ns:
            clause = cj.verify_reflection(pipeline(family, n).forward)
            chk(f"{family} n={n}", clause.status == cj.VERIFIED)
    finish(5, chk)


# -- 6 ----------------------------------------------------------------------------------


def profile(recs) -> dict:
    return {r.k: sorted(((f.degree(), e) for f, e in r.factors), reverse=True) for r in recs}


def has_factor(rec, poly, mult) -> bool:
    return any(e == mult and same_hypersurface(f, poly) for f, e in rec.factors)


def test_criterion_6_censuses():
    chk = Checks()
    F = Fraction

    def forward(family, n, ks):
        return {r.k: r for r in cj.special_k_census(family, n, ks=ks, pipeline=pipeline(family, n))}

    def inverse(family, n, ks):
        return {r.k: r for r in cj.special_k_census(family, n, inverse=True, ks=ks, pipeline=pipeline(family, n))}

    # triple lines
    for k0, rec in forward("one", 2, range(-3, 1)).items():
        chk(f"one n=2 k={k0} triple line", profile([rec])[k0] == [(1, 3)])
    for k0, rec in forward("two", 1, (-1, 0)).items():
        chk(f"two n=1 k={k0} triple line", profile([rec])[k0] == [(1, 3)])
    for k0, rec in inverse("one", 2, (-3, F(-3, 2), 0)).items():
        chk(f"one n=2 inverse k={k0} triple line", profile([rec])[k0] == [(1, 3)])
    for k0, rec in inverse("two", 1, (-1, F(-1, 2), 0)).items():
        chk(f"two n=1 inverse k={k0} triple line", profile([rec])[k0] == [(1, 3)])

    # one-sided n = 3
    vs, v = printed.vars_for("one", 3)
    hp = 5 * v["l1"] - 15 * v["l2"] - v["h"]
    recs = forward("one", 3, range(-5, 2))
    for k0 in (-5, 1):
        r = recs[k0]
        chk(f"one n=3 k={k0} h^5", (MultiPoly.var(r.factors[0][0].vs, "h"), 5) in r.factors)
        chk(f"one n=3 k={k0} hyperplane^3", has_factor(r, hp.subs({"k": 0}), 3))
    for k0 in range(-4, 1):
        chk(f"one n=3 k={k0} h^8", profile([recs[k0]])[k0] == [(1, 8)])

    # one-sided n = 4
    vs, v = printed.vars_for("one", 4)
    hp = 15 * v["l1"] + 60 * v["l2"] + 135 * v["l3"] - 2 * v["h"]
    recs = forward("one", 4, range(-7, 3))
    for k0 in (-7, 2):
        chk(f"one n=4 k={k0} h^7 quadric^4", profile([recs[k0]])[k0] == [(2, 4), (1, 7)])
    for k0 in (-6, 1):
        r = recs[k0]
        chk(f"one n=4 k={k0} h^11", profile([r])[k0] == [(1, 11), (1, 4)])
        chk(f"one n=4 k={k0} printed hyperplane", has_factor(r, hp.subs({"k": 0}), 4))
    for k0 in range(-5, 1):
        chk(f"one n=4 k={k0} h^15", profile([recs[k0]])[k0] == [(1, 15)])

    # two-sided n = 2, with the printed coordinates mapped to computed ones
    cal = cj.calibrate(printed.two_n2(), construct("two", 2), ["l0", "l1", "r0", "r1"])
    vs, v = printed.vars_for("two", 2)
    inv_scales = {name: 1 / c for name, c in (cal[0] if cal else {}).items()}
    hps = [2 * v["l0"] - 12 * v["r1"] + 12 * v["l1"] + v["h"], 2 * v["r0"] - 12 * v["l1"] + 12 * v["r1"] + v["h"]]
    hps = [rescale(h, inv_scales).subs({"k": 0}) for h in hps]
    recs = forward("two", 2, range(-3, 3))
    for k0 in (-3, 2):
        chk(f"two n=2 k={k0} h^7 two quadrics^2", profile([recs[k0]])[k0] == [(2, 2), (2, 2), (1, 7)])
    for k0 in (-2, 1):
        r = recs[k0]
        chk(f"two n=2 k={k0} h^11 two planes^2", profile([r])[k0] == [(1, 11), (1, 2), (1, 2)])
        chk(f"two n=2 k={k0} printed planes", cal is not None and all(has_factor(r, h, 2) for h in hps))
    for k0 in (-1, 0):
        chk(f"two n=2 k={k0} h^15", profile([recs[k0]])[k0] == [(1, 15)])

    # two-sided n = 2 inverse
    recs = inverse("two", 2, (F(-3, 2), F(-1), F(-1, 2), F(0), F(1, 2)))
    jvs, j = printed.jvars(5)
    r = recs[F(-1, 2)]
    chk("two n=2 inverse k=-1/2 profile", profile([r])[r.k] == [(1, 6), (1, 6), (1, 3)])
    chk("two n=2 inverse k=-1/2 j0-j4", has_factor(r, (j["j0"] - j["j4"]).subs({"k": 0}), 3))
    for k0 in (F(-3, 2), F(1, 2)):
        chk(f"two n=2 inverse k={k0} 13+2", profile([recs[k0]])[k0] == [(1, 13), (1, 2)])
    for k0 in (F(-1), F(0)):
        chk(f"two n=2 inverse k={k0} 15", profile([recs[k0]])[k0] == [(1, 15)])
    finish(6, chk)


# -- 7 ----------------------------------------------------------------------------------


def test_criterion_7_property_suites():
    chk = Checks()
    for family, ns in (("one", ONE_NS), ("two", TWO_NS)):
        for n in ns:
            res = orthogonality_suite(family, n, n + 3)
            chk(f"{family} n={n} orthogonality up to {n + 3}", res["ok"])
            chk(f"{family} n={n} lift validated", pipeline(family, n).forward is not None)
            for k in range(n + 4):
                e = expansion_at_k(family, n, k)
                ints = [c for c in e.coeffs if c]
                from math import gcd
                g = 0
                for c in ints:
                    g = gcd(g, *(int(x) for x in (c.scale(c.den).num.values())))
                chk(f"{family} n={n} k={k} primitive", all(c.den == 1 for c in ints) and g == 1)
            sh = pipeline(family, n).forward_shape
            chk(f"{family} n={n} factor-shape reconstruction", sh.certified)
    finish(7, chk)


# -- 8 ----------------------------------------------------------------------------------


def test_criterion_8_evidence_non_blocking():
    rep = cj.evidence("one", 5, [6, 7])
    ok = rep.ok and rep.label.startswith("evidence")
    record_criterion(8, ok, f"non-blocking; label '{rep.label}', "
                     + ", ".join(f"{c.id}={c.status}" for c in rep.clauses))
    assert "partial" in rep.label
