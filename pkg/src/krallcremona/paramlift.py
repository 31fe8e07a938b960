"""Lifting fixed-k expansion vectors to maps polynomial in the parameter k."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactpoly.interp import InterpolationError, interpolate_poly
from .exactpoly.poly import MultiPoly, VarSet
from .krall import ExpansionVector, expansion_at_k
from .orthobasis import ONE_SIDED, WeightSpec

VALIDATION_POINTS = 4
NORMALIZATION_VERSION = "unit-constant-v1"


class NormalizationError(ArithmeticError):
    pass


class DegreeBoundError(ArithmeticError):
    """Held-out samples are not reproduced at the conjectured k-degree."""


def map_degree(family: str, n: int) -> int:
    return n if family == ONE_SIDED else 2 * n


def k_degree_bound(family: str, n: int) -> int:
    return 2 * n * n if family == ONE_SIDED else (2 * n) ** 2


def first_sample(family: str, n: int) -> int:
    return n + 1 if family == ONE_SIDED else 2 * n + 1


def projective_names(family: str, n: int) -> tuple[str, ...]:
    return WeightSpec(family, n).params + ("h",)


def map_varset(family: str, n: int) -> VarSet:
    """Variables of a parametric map: Dirac parameters, h, then k."""
    return VarSet(projective_names(family, n) + ("k",))


@dataclass(frozen=True)
class ParametricMap:
    family: str
    n: int
    components: tuple[MultiPoly, ...]
    skipped: tuple[int, ...] = field(default=())
    kind: str = "forward"

    @property
    def vs(self) -> VarSet:
        return self.components[0].vs

    @property
    def proj_vars(self) -> tuple[str, ...]:
        if self.kind == "inverse":
            return tuple(f"j{i}" for i in range(WeightSpec(self.family, self.n).width))
        return projective_names(self.family, self.n)

    @property
    def degree(self) -> int:
        return map_degree(self.family, self.n)

    def degree_in_k(self) -> int:
        return degree_in_k(self)


def degree_in_k(m: ParametricMap) -> int:
    return max((c.degree_in("k") for c in m.components if c and "k" in c.vs), default=0)


def _l0_coeff(p: MultiPoly) -> Fraction:
    vs = p.vs
    e = [0] * len(vs)
    e[vs.index["l0"]] = 1
    return p.coeff(e)


def component_modes(e: ExpansionVector) -> tuple[str, ...]:
    modes = []
    for i, c in enumerate(e.coeffs):
        if c.constant_term() != 0:
            modes.append("const")
        elif _l0_coeff(c) != 0:
            modes.append("l0")
        else:
            raise NormalizationError(f"component {i} has neither constant nor l0 term at k={e.k}")
    return tuple(modes)


def normalize_components(e: ExpansionVector, modes=None) -> list[MultiPoly]:
    """Scale each component to unit constant term (or unit l0 coefficient)."""
    if modes is None:
        modes = component_modes(e)
    out = []
    for i, (c, mode) in enumerate(zip(e.coeffs, modes)):
        s = c.constant_term() if mode == "const" else _l0_coeff(c)
        if s == 0:
            raise NormalizationError(f"normalizer of component {i} vanishes at k={e.k}")
        out.append(c.scale(1 / s))
    return out


def homogenize(p: MultiPoly, degree: int, hvs: VarSet, hname: str = "h") -> MultiPoly:
    """Homogenize a polynomial in the Dirac parameters (and possibly k) with h."""
    q = p.embed(hvs)
    hi = hvs.index[hname]
    hunit = hvs.var_unit(hi)
    proj = [hvs.index[nm] for nm in hvs.names if nm not in (hname, "k")]
    out = {}
    for m, c in q.num.items():
        e = hvs.unpack(m)
        d = sum(e[i] for i in proj)
        if d > degree:
            raise ValueError("term exceeds the homogenizing degree")
        out[m + (degree - d) * hunit] = c
    return MultiPoly(hvs, out, q.den)


def lift(family: str, n: int, *, extra: int = VALIDATION_POINTS, executor=None) -> ParametricMap:
    """Interpolate normalized expansions over consecutive integer k."""
    B = k_degree_bound(family, n)
    need = B + 1 + extra
    k = first_sample(family, n)
    samples: list[tuple[int, list[MultiPoly]]] = []
    skipped: list[int] = []
    modes = None
    while len(samples) < need:
        batch = list(range(k, k + need - len(samples)))
        k += len(batch)
        vectors = _expansions(family, n, batch, executor)
        for e in vectors:
            if modes is None:
                modes = component_modes(e)
            try:
                samples.append((e.k, normalize_components(e, modes)))
            except NormalizationError:
                skipped.append(e.k)
    hvs = map_varset(family, n)
    deg = map_degree(family, n)
    comps = []
    for i in range(len(modes)):
        pts = [(kk, v[i]) for kk, v in samples]
        try:
            p = interpolate_poly(pts, B, var="k")
        except InterpolationError as exc:
            raise DegreeBoundError(f"component {i}: {exc}") from exc
        comps.append(homogenize(p, deg, hvs))
    return ParametricMap(family, n, tuple(comps), tuple(skipped))


def _expansions(family, n, ks, executor):
    if executor is None:
        return [expansion_at_k(family, n, k) for k in ks]
    return list(executor.map(expansion_at_k, [family] * len(ks), [n] * len(ks), ks))
