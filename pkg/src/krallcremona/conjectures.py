"""Evidence drivers: conjecture clauses, reflection checks, censuses, evidence mode.

Every driver returns plain data. A clause is ``verified`` only when its
exact check passed; a failed check is ``falsified`` and anything the
machinery could not decide (a residual that does not fit the conjectured
shape, a reconstruction that did not validate) is ``unexplained``.
"""
from __future__ import annotations

import platform
import random
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from ._accel import numba_enabled
from .exactpoly.gcd import coefficients_in
from .exactpoly.interp import InterpolationError
from .exactpoly.linalg import RankAnomalyError
from .exactpoly.poly import MultiPoly, NotDivisibleError, VarSet
from .exactpoly.roots import rational_roots, squarefree_decomposition
from .exactpoly.serialize import frac_str, poly_to_obj, to_text
from .krall import AnsatzDegreeError, expansion_at_k
from .orthobasis import ONE_SIDED, TWO_SIDED, WeightSpec
from .paramlift import (NORMALIZATION_VERSION, DegreeBoundError, NormalizationError, ParametricMap,
                        component_modes, homogenize, k_degree_bound, lift, map_degree, map_varset,
                        normalize_components)
from .cremona.inverse import (InverseConsistencyError, NoInverseError, check_inverse, invert,
                              invert_parametric, structural_inverse)
from .cremona.maps import (DegenerateMapError, FixedMap, jacobian_det, lr_conjugate, proportional,
                           reflect_in_k, reflection_point, reverse_components, specialize,
                           specialize_raw)
from .cremona.shapes import (CensusRecord, CertifiedShape, InverseStructure, ShapeError, census,
                             extract_gamma, forward_shape, inverse_shape, pullback_hypersurface)

VERIFIED = "verified"
FALSIFIED = "falsified"
UNEXPLAINED = "unexplained"

CLAUSES = {
    ONE_SIDED: ("birational-generic-k", "bidegree", "detjac-degree", "two-components",
                "h-multiplicity", "S-degree", "S-multiplicity", "S-independent-of-l_0",
                "D-degree", "D-root-set", "special-k-reducibility", "degree-in-k",
                "inverse-shape"),
    TWO_SIDED: ("birational-generic-k", "bidegree", "detjac-degree", "three-components",
                "h-multiplicity", "S-degree", "S-multiplicity", "S-lr-conjugate",
                "D-degree", "D-root-set", "special-k-reducibility", "degree-in-k",
                "inverse-shape"),
}
REFLECTION = "reflection"

# Failures that count as evidence against a clause rather than as bugs.
FALSIFIERS = (RankAnomalyError, DegreeBoundError, NormalizationError, AnsatzDegreeError,
              NoInverseError, InverseConsistencyError, ShapeError, DegenerateMapError,
              InterpolationError, NotDivisibleError)

SPOT_CHECKS = 3


def versions() -> dict:
    return {
        "code": __version__,
        "normalization": NORMALIZATION_VERSION,
        "kernels": "numba" if numba_enabled() else "numpy",
        "python": platform.python_version(),
    }


@dataclass
class Clause:
    id: str
    status: str
    witness: object
    ms: int = 0

    def to_obj(self, timing: bool = True) -> dict:
        return {"id": self.id, "status": self.status, "witness": self.witness,
                "ms": self.ms if timing else None}


@dataclass
class ConjectureReport:
    family: str
    n: int
    clauses: list[Clause]
    seed: int
    label: str = "full"
    stages: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.status == VERIFIED for c in self.clauses)

    def clause(self, cid: str) -> Clause:
        return next(c for c in self.clauses if c.id == cid)

    def to_obj(self, timing: bool = True) -> dict:
        out = {"family": self.family, "n": self.n, "label": self.label, "seed": self.seed,
               "clauses": [c.to_obj(timing) for c in self.clauses], "versions": versions()}
        if timing:
            out["stage_seconds"] = {k: round(v, 3) for k, v in self.stages.items()}
        return out


# -- small helpers ------------------------------------------------------------


def conjectured_d_set(family: str, n: int) -> list[Fraction]:
    """Parameter values where birationality is conjectured to fail."""
    if family == ONE_SIDED:
        return [Fraction(-2 * n + i, 2) for i in range(2 * n - 1)]
    return [Fraction(-(2 * n - 1), 2) + i for i in range(2 * n - 1)]


def reducible_range(family: str, n: int) -> list[int]:
    top = n - 2 if family == ONE_SIDED else 2 * n - 2
    if (family == ONE_SIDED and n < 3) or (family == TWO_SIDED and n < 2):
        return []
    return list(range(-2 * n + 1, top + 1))


def forward_census_ks(family: str, n: int) -> list[int]:
    top = n - 2 if family == ONE_SIDED else 2 * n - 2
    return list(range(-2 * n + 1, top + 1))


# Parameter values itemized for the inverse degenerations; other n fall back
# to the rational roots of the inverse shape's k-content.
INVERSE_CENSUS_KS = {
    (ONE_SIDED, 2): (Fraction(-3), Fraction(-3, 2), Fraction(0)),
    (TWO_SIDED, 1): (Fraction(-1), Fraction(-1, 2), Fraction(0)),
    (TWO_SIDED, 2): (Fraction(-3, 2), Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2)),
}


def _roots_obj(u) -> list:
    roots, _ = rational_roots(u)
    return [[frac_str(r), e] for r, e in roots]


def _proj(p: MultiPoly) -> list[str]:
    return [v for v in p.vs.names if v != "k"]


def _deg(p: MultiPoly) -> int:
    return p.degree_in_vars(_proj(p)) if p else -1


def squarefree_at(p: MultiPoly, k0) -> bool:
    vs = VarSet(tuple(_proj(p)))
    q = p.subs({"k": Fraction(k0)}).restrict(vs)
    if q.is_constant():
        return True
    pieces = squarefree_decomposition(q)
    return all(e == 1 for _, e in pieces)


def record_obj(rec: CensusRecord) -> dict:
    return {
        "k": frac_str(rec.k),
        "D": None if rec.d_value is None else frac_str(rec.d_value),
        "factors": [{"degree": f.degree(), "multiplicity": e, "text": to_text(f), "poly": poly_to_obj(f)}
                    for f, e in rec.factors],
    }


def mutate(m: ParametricMap) -> ParametricMap:
    """Negative-control hook: bump the leading coefficient of component 0 by one."""
    c = m.components[0]
    lm = c.leading_monomial()
    bumped = c + MultiPoly.from_packed(c.vs, {lm: 1})
    return replace(m, components=(bumped,) + m.components[1:])


# -- the evidence pipeline ------------------------------------------------------


class Pipeline:
    """Lazily computed stages shared by all clauses of one report.

    ``forward`` and ``inverse`` may be supplied (from a cache); ``executor``
    is passed down to the sampling loops.
    """

    def __init__(self, family: str, n: int, *, forward: ParametricMap | None = None,
                 inverse: ParametricMap | None = None, executor=None, mutate_fixture: bool = False):
        self.family, self.n = family, n
        self.executor = executor
        self.mutated = mutate_fixture
        self.stages: dict[str, float] = {}
        self._cache: dict[str, object] = {}
        if forward is not None:
            self._cache["forward"] = mutate(forward) if mutate_fixture else forward
        if inverse is not None:
            self._cache["inverse"] = inverse

    def _stage(self, name: str, fn: Callable):
        if name not in self._cache:
            t = time.perf_counter()
            try:
                self._cache[name] = fn()
            except FALSIFIERS as exc:
                self._cache[name] = exc
            self.stages[name] = time.perf_counter() - t
        v = self._cache[name]
        if isinstance(v, BaseException):
            raise v
        return v

    @property
    def forward(self) -> ParametricMap:
        def build():
            m = lift(self.family, self.n, executor=self.executor)
            return mutate(m) if self.mutated else m
        return self._stage("forward", build)

    @property
    def inverse(self) -> ParametricMap:
        return self._stage("inverse", lambda: invert_parametric(self.forward, executor=self.executor))

    @property
    def structure(self) -> InverseStructure:
        return self._stage("structure", lambda: extract_gamma(self.inverse))

    @property
    def pullback(self) -> MultiPoly:
        return self._stage("pullback", lambda: pullback_hypersurface(self.structure.gamma, self.forward))

    @property
    def forward_shape(self) -> CertifiedShape:
        def build():
            if self.family == ONE_SIDED:
                return forward_shape(self.forward)
            return forward_shape(self.forward, self.pullback)
        return self._stage("forward_shape", build)

    @property
    def inverse_shape(self) -> CertifiedShape:
        return self._stage("inverse_shape", lambda: inverse_shape(self.inverse, self.structure))

    @property
    def S(self) -> MultiPoly | None:
        sh = self.forward_shape
        return sh.roots[0][0] if sh.roots else None


def _require_certified(sh: CertifiedShape, what: str):
    if not sh.certified:
        raise ShapeError(f"{what} shape not certified: {sh.failure}")


# -- clause bodies -----------------------------------------------------------------
# Each returns (status, witness). Exceptions in FALSIFIERS become "unexplained".


def _degree_in_k(p: Pipeline):
    B = k_degree_bound(p.family, p.n)
    fwd = p.forward.degree_in_k()
    inv = p.inverse.degree_in_k()
    ok = fwd == B and inv == B
    return (VERIFIED if ok else FALSIFIED), {"bound": B, "map": fwd, "inverse": inv}


def _bidegree(p: Pipeline):
    d = map_degree(p.family, p.n)
    fd = sorted({_deg(c) for c in p.forward.components if c})
    idg = sorted({_deg(c) for c in p.inverse.components if c})
    ok = fd == [d] and idg == [d]
    return (VERIFIED if ok else FALSIFIED), {"expected": [d, d], "map": fd, "inverse": idg}


def _spot_ks(p: Pipeline, seed: int) -> list[Fraction]:
    rng = random.Random(seed)
    avoid = set(conjectured_d_set(p.family, p.n))
    out: list[Fraction] = []
    while len(out) < SPOT_CHECKS:
        k0 = Fraction(rng.randint(-40, 40), rng.choice((3, 5, 7)))
        if k0 not in avoid and k0 not in out:
            out.append(k0)
    return out


def _birational(p: Pipeline, seed: int):
    m, inv = p.forward, p.inverse
    d = map_degree(p.family, p.n)
    generic, special = [], []
    ok = True
    for i, k0 in enumerate(_spot_ks(p, seed)):
        F = specialize(m, k0)
        G = specialize(inv, k0)
        entry = {"k": frac_str(k0)}
        try:
            lam = check_inverse(G, F)
            entry["lambda_degree"] = lam.degree()
            H, _ = invert(F, degree=d, seed=seed + i)
            entry["independent_inverse_agrees"] = proportional(list(H.components), list(G.components))
            ok &= entry["independent_inverse_agrees"]
        except (InverseConsistencyError, NoInverseError, RankAnomalyError) as exc:
            entry["error"] = str(exc)
            ok = False
        generic.append(entry)
    for k0 in conjectured_d_set(p.family, p.n):
        dj = jacobian_det(specialize_raw(m, k0), m.proj_vars)
        vanishes = dj.is_zero()
        special.append({"k": frac_str(k0), "detjac_vanishes": vanishes})
        ok &= vanishes
    return (VERIFIED if ok else FALSIFIED), {"generic": generic, "special": special}


def _detjac_degree(p: Pipeline):
    sh = p.forward_shape
    _require_certified(sh, "forward")
    expected = map_degree(p.family, p.n) ** 2 - 1 if p.family == TWO_SIDED else p.n ** 2 - 1
    total = sum(e * _deg(h) for h, e in sh.hyperplanes) + sum(e * _deg(s) for s, e in sh.roots)
    w = {"expected": expected, "degree": total}
    if p.n == 1 and p.family == ONE_SIDED:
        w["note"] = "det jac is constant in the parameters"
    return (VERIFIED if total == expected else FALSIFIED), w


def _components(p: Pipeline):
    sh = p.forward_shape
    _require_certified(sh, "forward")
    h = MultiPoly.var(p.forward.vs, "h")
    roots = [s for s, _ in sh.roots]
    w = {"hyperplane": "h", "hypersurfaces": [to_text(s) if len(s) <= 12 else f"<{len(s)} terms>"
                                              for s in roots]}
    if p.family == ONE_SIDED:
        if p.n == 1:
            w["note"] = "degenerate case: no hypersurface component"
            return VERIFIED, w
        ok = len(roots) == 1 and not roots[0].is_constant() and roots[0].multiplicity(h)[0] == 0
    else:
        ok = (len(roots) == 2 and all(not s.is_constant() and s.multiplicity(h)[0] == 0 for s in roots)
              and not proportional([roots[0]], [roots[1]]))
    return (VERIFIED if ok else FALSIFIED), w


def _h_multiplicity(p: Pipeline):
    sh = p.forward_shape
    _require_certified(sh, "forward")
    h = MultiPoly.var(p.forward.vs, "h")
    expected = p.n - 1 if p.family == ONE_SIDED else 2 * p.n - 1
    got = sh.hyperplanes[0][1] + sum(e * s.multiplicity(h)[0] for s, e in sh.roots)
    return (VERIFIED if got == expected else FALSIFIED), {"expected": expected, "multiplicity": got}


def _s_degree(p: Pipeline):
    sh = p.forward_shape
    _require_certified(sh, "forward")
    expected = p.n - 1 if p.family == ONE_SIDED else 2 * p.n - 1
    degs = [_deg(s) for s, _ in sh.roots] or [0]
    return (VERIFIED if set(degs) == {expected} else FALSIFIED), {"expected": expected, "degrees": degs}


def _s_multiplicity(p: Pipeline):
    sh = p.forward_shape
    _require_certified(sh, "forward")
    if not sh.roots:
        return VERIFIED, {"expected": p.n, "note": "no hypersurface component"}
    k0 = sh.samples[0]
    mults = [e for _, e in sh.roots]
    sqf = all(squarefree_at(s, k0) for s, _ in sh.roots)
    ok = set(mults) == {p.n} and sqf
    return (VERIFIED if ok else FALSIFIED), {"expected": p.n, "multiplicities": mults,
                                             "squarefree_at": k0, "squarefree": sqf}


def _s_free_of_l0(p: Pipeline):
    S = p.S
    if S is None:
        return VERIFIED, {"note": "no hypersurface component"}
    dl0 = S.degree_in("l0")
    w = {"degree_in_l0": dl0}
    if p.family == ONE_SIDED and p.n >= 2:
        w["pullback_agrees"] = proportional([S], [p.pullback])
    return (VERIFIED if dl0 == 0 else FALSIFIED), w


def _s_lr_conjugate(p: Pipeline):
    sh = p.forward_shape
    _require_certified(sh, "forward")
    S, Sb = (s for s, _ in sh.roots)
    ok = lr_conjugate(S) == Sb and not proportional([S], [Sb])
    return (VERIFIED if ok else FALSIFIED), {"conjugate_pair": ok, "S_terms": len(S)}


def _d_degree(p: Pipeline):
    sh = p.forward_shape
    _require_certified(sh, "forward")
    expected = 2 * p.n - 1
    return ((VERIFIED if sh.d_degree == expected else FALSIFIED),
            {"expected": expected, "degree": sh.d_degree, "roots": _roots_obj(sh.D)})


def _d_root_set(p: Pipeline):
    sh = p.forward_shape
    _require_certified(sh, "forward")
    roots, rest = rational_roots(sh.D)
    got = sorted(r for r, _ in roots)
    want = conjectured_d_set(p.family, p.n)
    ok = got == want and len(rest) == 1
    return (VERIFIED if ok else FALSIFIED), {"expected": [frac_str(x) for x in want],
                                             "roots": [frac_str(x) for x in got]}


def _special_k(p: Pipeline):
    ks = reducible_range(p.family, p.n)
    if not ks:
        return VERIFIED, {"note": "vacuous for this n", "k": []}
    sh = p.forward_shape
    _require_certified(sh, "forward")
    rows = []
    ok = True
    for rec in census(sh, ks):
        split = _hypersurface_split(sh, rec.k)
        rows.append({"k": frac_str(rec.k), "reducible": split, "profile": rec.profile()})
        ok &= split
    return (VERIFIED if ok else FALSIFIED), {"k": rows}


def _hypersurface_split(sh: CertifiedShape, k0) -> bool:
    """True if every hypersurface factor is visibly reducible at k0: a factor
    h, a repeated factor, or at least two distinct squarefree pieces."""
    for S, _ in sh.roots:
        vs = VarSet(tuple(_proj(S)))
        q = S.subs({"k": k0}).restrict(vs)
        if q.is_zero():
            return True
        if q.multiplicity(MultiPoly.var(vs, "h"))[0]:
            continue
        pieces = squarefree_decomposition(q)
        if len(pieces) < 2 and all(e == 1 for _, e in pieces):
            return False
    return True


def _inverse_shape(p: Pipeline):
    st = p.structure
    sh = p.inverse_shape
    n = p.n
    w = {"gamma": to_text(st.gamma), "exponent_pattern": [list(x) for x in st.exponent_pattern],
         "certified": sh.certified}
    if not sh.certified:
        w["failure"] = sh.failure
        return UNEXPLAINED, w
    if p.family == ONE_SIDED:
        want_mult = n * (n - 1)
        want_pattern = [[i, 0] for i in range(n + 1)]
        want_deg = n - 1
    else:
        want_mult = n * (2 * n - 1)
        want_pattern = None
        want_deg = 2 * n - 1
    mults = [e for _, e in sh.hyperplanes]
    degs = [_deg(s) for s, _ in sh.roots] or [0]
    w.update({"hyperplane_multiplicities": mults, "S_degree": degs, "D": _roots_obj(sh.D)})
    ok = set(mults) == {want_mult} and degs == [want_deg]
    if sh.roots:
        ok &= squarefree_at(sh.roots[0][0], sh.samples[0])
    if want_pattern is not None:
        ok &= w["exponent_pattern"] == want_pattern
    return (VERIFIED if ok else FALSIFIED), w


BODIES = {
    "degree-in-k": _degree_in_k,
    "bidegree": _bidegree,
    "detjac-degree": _detjac_degree,
    "two-components": _components,
    "three-components": _components,
    "h-multiplicity": _h_multiplicity,
    "S-degree": _s_degree,
    "S-multiplicity": _s_multiplicity,
    "S-independent-of-l_0": _s_free_of_l0,
    "S-lr-conjugate": _s_lr_conjugate,
    "D-degree": _d_degree,
    "D-root-set": _d_root_set,
    "special-k-reducibility": _special_k,
    "inverse-shape": _inverse_shape,
}


def _run(cid: str, body, *args) -> Clause:
    t = time.perf_counter()
    try:
        status, witness = body(*args)
    except FALSIFIERS as exc:
        status, witness = UNEXPLAINED, {"error": f"{type(exc).__name__}: {exc}"}
    return Clause(cid, status, witness, int((time.perf_counter() - t) * 1000))


def verify(family: str, n: int, *, seed: int = 0, pipeline: Pipeline | None = None,
           reflection: bool = True, **kw) -> ConjectureReport:
    """Evaluate every clause of the family's conjecture pair (plus reflection)."""
    WeightSpec(family, n)
    p = pipeline or Pipeline(family, n, **kw)
    clauses = []
    for cid in CLAUSES[family]:
        if cid == "birational-generic-k":
            clauses.append(_run(cid, _birational, p, seed))
        else:
            clauses.append(_run(cid, BODIES[cid], p))
    if reflection:
        clauses.append(_run(REFLECTION, lambda: _reflection_body(p.forward)))
    return ConjectureReport(family, n, clauses, seed, stages=dict(p.stages))


def verify_one_sided(n: int, **kw) -> ConjectureReport:
    return verify(ONE_SIDED, n, **kw)


def verify_two_sided(n: int, **kw) -> ConjectureReport:
    return verify(TWO_SIDED, n, **kw)


def _reflection_body(m: ParametricMap, shift: int | None = None):
    s, t = reflection_point(m.family, m.n)
    t = t if shift is None else shift
    lhs = reflect_in_k(m, t).components
    rhs = reverse_components(m).components
    ok = proportional(list(lhs), list(rhs))
    return (VERIFIED if ok else FALSIFIED), {"substitution": f"k -> {t} - k", "identity": ok}


def verify_reflection(m: ParametricMap, shift: int | None = None) -> Clause:
    """k -> t - k reverses the component order (t = -n-1 or -1 unless overridden)."""
    return _run(REFLECTION, _reflection_body, m, shift)


# -- censuses ---------------------------------------------------------------------


def special_k_census(family: str, n: int, *, inverse: bool = False, ks: Sequence | None = None,
                     pipeline: Pipeline | None = None, **kw) -> list[CensusRecord]:
    """Degeneration profiles of det jac (of the map or of its inverse) at special k."""
    p = pipeline or Pipeline(family, n, **kw)
    if not inverse:
        sh = p.forward_shape
        _require_certified(sh, "forward")
        return census(sh, forward_census_ks(family, n) if ks is None else ks)
    sh = p.inverse_shape
    _require_certified(sh, "inverse")
    if ks is None:
        ks = INVERSE_CENSUS_KS.get((family, n))
        if ks is None:
            ks = [r for r, _ in rational_roots(sh.D)[0]]
    return census(sh, ks, strip_h=False)


# -- evidence mode ---------------------------------------------------------------


def fixed_map_at(family: str, n: int, k: int) -> FixedMap:
    """Normalized, homogenized map at one integer k (no parametric lift)."""
    e = expansion_at_k(family, n, k)
    comps = normalize_components(e, component_modes(e))
    hvs = VarSet(map_varset(family, n).names[:-1])
    d = map_degree(family, n)
    return FixedMap(tuple(homogenize(c.embed(hvs), d, hvs) for c in comps))


def evidence(family: str, n: int, ks: Sequence[int], *, seed: int = 0) -> ConjectureReport:
    """Partial report: expansions and exact fixed-k inverses at the given k."""
    rows_e, rows_i = [], []
    ok_e = ok_i = True
    t0 = time.perf_counter()
    maps = {}
    for k in ks:
        try:
            maps[k] = fixed_map_at(family, n, k)
            F = maps[k]
            rows_e.append({"k": k, "terms": [len(c) for c in F.components],
                           "degree": F.degree, "homogeneous": F.is_homogeneous()})
            ok_e &= F.is_homogeneous() and F.degree == map_degree(family, n)
        except FALSIFIERS as exc:
            rows_e.append({"k": k, "error": f"{type(exc).__name__}: {exc}"})
            ok_e = False
    ms_e = int((time.perf_counter() - t0) * 1000)
    t0 = time.perf_counter()
    for k in ks:
        if k not in maps:
            continue
        try:
            G = structural_inverse(family, n, k)
            lam = check_inverse(G, maps[k])
            rows_i.append({"k": k, "inverse_degree": G.degree, "lambda_degree": lam.degree(),
                           "terms": [len(c) for c in G.components]})
            ok_i &= G.degree == map_degree(family, n)
        except FALSIFIERS as exc:
            rows_i.append({"k": k, "error": f"{type(exc).__name__}: {exc}"})
            ok_i = False
    ms_i = int((time.perf_counter() - t0) * 1000)
    clauses = [Clause("expansion", VERIFIED if ok_e else FALSIFIED, rows_e, ms_e),
               Clause("fixed-k-inverse", VERIFIED if ok_i else FALSIFIED, rows_i, ms_i)]
    return ConjectureReport(family, n, clauses, seed, label="evidence (partial)")


# -- calibration against printed coordinates -------------------------------------


def calibrate(printed: Sequence[MultiPoly], computed: Sequence[MultiPoly],
              params: Sequence[str]) -> tuple[dict[str, Fraction], list[Fraction]] | None:
    """Diagonal rescaling l_i -> c_i l_i taking the computed components to the printed ones.

    The ratios of the l_i h^(d-1) coefficients give the c_i; afterwards each
    component may still differ by a constant factor, since every component
    carries its own normalization. Returns (c, factors) when the identity
    printed_j = factor_j * computed_j(c l) holds exactly, else None.
    """
    vs = printed[0].vs
    proj = [v for v in vs.names if v != "k"]
    scales: dict[str, Fraction] = {}
    for name in params:
        for a, b in zip(printed, computed):
            deg = max(a.degree_in_vars(proj), 1)
            key = tuple(1 if v == name else (deg - 1 if v == "h" else 0) for v in proj)
            ca = coefficients_in(a, proj).get(key)
            cb = coefficients_in(b.embed(vs), proj).get(key)
            if ca and cb:
                q = ca.try_divide(cb)
                if q is None or not q.is_constant():
                    continue
                scales[name] = q.constant_term()
                break
        else:
            return None
    from .exactpoly.poly import compose as poly_compose
    images = [MultiPoly.var(vs, v).scale(scales[v]) if v in scales else MultiPoly.var(vs, v)
              for v in vs.names]
    factors = []
    for a, b in zip(printed, computed):
        b2 = poly_compose(b.embed(vs), images, vs)
        q = a.try_divide(b2) if b2 else None
        if q is None or not q.is_constant():
            return None
        factors.append(q.constant_term())
    return scales, factors
