"""Command-line front end.

Exit codes: 0 success or verified, 1 falsified clause or degenerate input,
2 internal error.
"""
from __future__ import annotations

import argparse
import contextlib
import sys
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import conjectures as cj
from .cache import MapCache
from .cremona.inverse import NoInverseError, invert, invert_parametric
from .cremona.maps import DegenerateMapError, jacobian_det, specialize, specialize_raw
from .cremona.shapes import CensusRecord, decompose_at
from .exactpoly.gcd import coefficients_in, to_upoly
from .exactpoly.poly import MultiPoly, VarSet
from .exactpoly.roots import rational_roots
from .exactpoly.serialize import dumps, frac_str, poly_to_obj
from .exactpoly.univariate import utrim
from .orthobasis import FAMILIES, WeightSpec
from .paramlift import ParametricMap, lift, map_degree

COMMANDS = ("construct", "invert", "jacobian", "verify", "census", "evidence")


@dataclass(frozen=True)
class JobSpec:
    command: str
    family: str
    n: int
    k: tuple[Fraction, ...] = ()
    format: str = "json"
    out: str | None = None
    cache_dir: str | None = None
    threads: int = 1
    seed: int = 0
    timing: bool = True
    mutate_fixture: bool = False
    inverse: bool = False
    use_cache: bool = True

    def __post_init__(self):
        WeightSpec(self.family, self.n)
        if self.threads < 1:
            raise ValueError("thread budget must be at least 1")


class Degenerate(Exception):
    """Input for which the map is not defined or not birational."""


# -- text rendering ---------------------------------------------------------------


def _kfactor(r: Fraction) -> str:
    p, q = r.numerator, r.denominator
    if p == 0:
        return "k"
    lead = "k" if q == 1 else f"{q}k"
    return f"({lead}{'-' if p > 0 else '+'}{abs(p)})"


def _upoly_text(u, var="k") -> str:
    parts = []
    for e in range(len(u) - 1, -1, -1):
        c = u[e]
        if not c:
            continue
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        a = abs(c)
        body = (mono if a == 1 and mono else f"{a}{mono}")
        parts.append(("-" if c < 0 else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f"{sign}{body}"
    return s


def coeff_text(u) -> tuple[int, str]:
    """(sign, text) of a polynomial in k in factored style, e.g. k(k+1)/2."""
    u = utrim(u)
    if len(u) == 1:
        c = u[0]
        return (1 if c > 0 else -1), str(abs(c))
    roots, cof = rational_roots(u)
    lin_lc = Fraction(1)
    factors = []
    for r, e in reversed(roots):
        lin_lc *= r.denominator ** e
        factors.append(_kfactor(r) + (f"^{e}" if e > 1 else ""))
    if len(cof) > 1:
        factors.append(f"({_upoly_text(cof)})")
    num = u[-1] / (lin_lc * cof[-1])
    sign = 1 if num > 0 else -1
    num = abs(num)
    body = "".join(factors)
    if num.numerator != 1:
        body = f"{num.numerator}{body}"
    if num.denominator != 1:
        body = f"{body}/{num.denominator}"
    return sign, body


def component_text(p: MultiPoly, proj: list[str]) -> str:
    if p.is_zero():
        return "0"
    params = [v for v in proj if v != "h"]
    groups = coefficients_in(p, proj)
    idx = {v: i for i, v in enumerate(proj)}

    def key(mono):
        return (sum(mono[idx[v]] for v in params), [-mono[idx[v]] for v in params])

    terms = []
    for mono in sorted(groups, key=key):
        c = groups[mono]
        u = to_upoly(c, "k") if "k" in c.vs else [c.constant_term()]
        sign, body = coeff_text(u)
        pairs = sorted(zip(proj, mono), key=lambda ve: ve[0] != "h")
        mtext = " ".join(v if e == 1 else f"{v}^{e}" for v, e in pairs if e)
        if not mtext:
            text = body
        elif body == "1":
            text = mtext
        else:
            text = f"{body} {mtext}"
        terms.append((sign, text))
    s = ("-" if terms[0][0] < 0 else "") + terms[0][1]
    for sign, text in terms[1:]:
        s += f" {'+' if sign > 0 else '-'} {text}"
    return s


def map_text(components, proj) -> str:
    return "( " + " : ".join(component_text(c, list(proj)) for c in components) + " )"


# -- commands ------------------------------------------------------------------------


def _executor(spec: JobSpec):
    if spec.threads > 1:
        return ProcessPoolExecutor(max_workers=spec.threads)
    return contextlib.nullcontext(None)


def _forward(spec: JobSpec, cache: MapCache, ex) -> ParametricMap:
    return cache.get_or_compute(spec.family, spec.n, "lift",
                                lambda: lift(spec.family, spec.n, executor=ex))


def _inverse(spec: JobSpec, cache: MapCache, ex, m: ParametricMap) -> ParametricMap:
    return cache.get_or_compute(spec.family, spec.n, "inverse",
                                lambda: invert_parametric(m, executor=ex))


def _map_obj(spec: JobSpec, kind: str, components, proj, k=None, extra=None) -> dict:
    obj = {"family": spec.family, "n": spec.n, "kind": kind, "k": None if k is None else frac_str(k),
           "vars": list(proj), "components": [poly_to_obj(c) for c in components]}
    if extra:
        obj.update(extra)
    return obj


def _single_k(spec: JobSpec):
    if len(spec.k) > 1:
        raise ValueError(f"{spec.command} takes a single --k")
    return spec.k[0] if spec.k else None


def cmd_construct(spec: JobSpec, cache: MapCache, ex):
    m = _forward(spec, cache, ex)
    k = _single_k(spec)
    if k is None:
        return _map_obj(spec, "forward", m.components, m.proj_vars, extra={"skipped": list(m.skipped)}), \
            map_text(m.components, m.proj_vars), 0
    try:
        F = specialize(m, k)
    except DegenerateMapError as exc:
        raise Degenerate(f"map vanishes at k={k}") from exc
    obj = _map_obj(spec, "forward", F.components, F.vs.names, k)
    code = 0
    if F.degree < m.degree or jacobian_det(specialize_raw(m, k), m.proj_vars).is_zero():
        obj["degenerate"] = True
        code = 1
    return obj, map_text(F.components, F.vs.names), code


def cmd_invert(spec: JobSpec, cache: MapCache, ex):
    m = _forward(spec, cache, ex)
    k = _single_k(spec)
    if k is None:
        inv = _inverse(spec, cache, ex, m)
        return _map_obj(spec, "inverse", inv.components, inv.proj_vars,
                        extra={"degree_in_k": inv.degree_in_k()}), \
            map_text(inv.components, inv.proj_vars), 0
    F = specialize(m, k)
    if F.degree < m.degree:
        raise Degenerate(f"map degree drops to {F.degree} at k={k}")
    try:
        G, lam = invert(F, degree=map_degree(spec.family, spec.n), seed=spec.seed)
    except NoInverseError as exc:
        raise Degenerate(f"no inverse of degree {m.degree} at k={k}: {exc}") from exc
    obj = _map_obj(spec, "inverse", G.components, G.vs.names, k, {"lambda": poly_to_obj(lam)})
    return obj, map_text(G.components, G.vs.names), 0


def _record_text(rec: CensusRecord) -> str:
    parts = [f"[{component_text(f, list(f.vs.names))}]^{e}" for f, e in rec.factors]
    d = "" if rec.d_value is None else f"  D={rec.d_value}"
    return f"k={rec.k}: " + (" * ".join(parts) or "constant") + d


def cmd_jacobian(spec: JobSpec, cache: MapCache, ex):
    m = _forward(spec, cache, ex)
    k = _single_k(spec)
    if k is not None:
        F = specialize_raw(m, k)
        d = jacobian_det(F, m.proj_vars)
        if d.is_zero():
            return {"family": spec.family, "n": spec.n, "k": frac_str(k), "det": poly_to_obj(d),
                    "degenerate": True}, f"k={frac_str(k)}: det jac = 0", 1
        vs = VarSet(m.proj_vars)
        rec = CensusRecord(k, tuple(decompose_at([(d, 1)], [MultiPoly.var(vs, "h")])), None)
        obj = cj.record_obj(rec)
        obj.update({"family": spec.family, "n": spec.n, "det": poly_to_obj(d)})
        return obj, _record_text(rec), 0
    inv = None if spec.family == "one" else _inverse(spec, cache, ex, m)
    p = cj.Pipeline(spec.family, spec.n, forward=m, inverse=inv, executor=ex)
    sh = p.forward_shape
    obj = {"family": spec.family, "n": spec.n, "certified": sh.certified, "failure": sh.failure,
           "D": [frac_str(c) for c in sh.D], "D_roots": cj._roots_obj(sh.D) if sh.D else [],
           "hyperplanes": [{"poly": poly_to_obj(h), "multiplicity": e} for h, e in sh.hyperplanes],
           "hypersurfaces": [{"poly": poly_to_obj(s), "multiplicity": e} for s, e in sh.roots],
           "samples": list(sh.samples)}
    lines = [f"certified: {sh.certified}", f"D(k) = {coeff_text(sh.D)[1] if sh.D else '?'}"]
    lines += [f"[{component_text(h, list(m.proj_vars))}]^{e}" for h, e in sh.hyperplanes]
    lines += [f"S^{e} with S of degree {s.degree_in_vars(m.proj_vars)}, {len(s)} terms" for s, e in sh.roots]
    return obj, "\n".join(lines), 0 if sh.certified else 1


def _pipeline(spec: JobSpec, cache: MapCache, ex) -> cj.Pipeline:
    m = _forward(spec, cache, ex)
    inv = None
    with contextlib.suppress(*cj.FALSIFIERS):
        inv = _inverse(spec, cache, ex, m)
    return cj.Pipeline(spec.family, spec.n, forward=m, inverse=inv, executor=ex,
                       mutate_fixture=spec.mutate_fixture)


def _report_text(rep: cj.ConjectureReport) -> str:
    lines = [f"{rep.family}-sided n={rep.n} [{rep.label}] seed={rep.seed}"]
    for c in rep.clauses:
        lines.append(f"  {c.id:<24} {c.status:<12} {dumps(c.witness)[:160]}")
    return "\n".join(lines)


def cmd_verify(spec: JobSpec, cache: MapCache, ex):
    rep = cj.verify(spec.family, spec.n, seed=spec.seed, pipeline=_pipeline(spec, cache, ex))
    return rep.to_obj(spec.timing), _report_text(rep), 0 if rep.ok else 1


def cmd_census(spec: JobSpec, cache: MapCache, ex):
    p = _pipeline(spec, cache, ex)
    ks = list(spec.k) or None
    recs = cj.special_k_census(spec.family, spec.n, inverse=spec.inverse, ks=ks, pipeline=p)
    obj = {"family": spec.family, "n": spec.n, "inverse": spec.inverse,
           "records": [cj.record_obj(r) for r in recs]}
    return obj, "\n".join(_record_text(r) for r in recs), 0


def cmd_evidence(spec: JobSpec, cache: MapCache, ex):
    ks = [int(k) for k in spec.k] or [6, 7]
    rep = cj.evidence(spec.family, spec.n, ks, seed=spec.seed)
    return rep.to_obj(spec.timing), _report_text(rep), 0 if rep.ok else 1


HANDLERS = {"construct": cmd_construct, "invert": cmd_invert, "jacobian": cmd_jacobian,
            "verify": cmd_verify, "census": cmd_census, "evidence": cmd_evidence}


def run(spec: JobSpec) -> tuple[str, int]:
    """Execute a job; returns (rendered output, exit code)."""
    cache = MapCache(spec.cache_dir, enabled=spec.use_cache and not spec.mutate_fixture)
    with _executor(spec) as ex:
        obj, text, code = HANDLERS[spec.command](spec, cache, ex)
    out = text if spec.format == "text" else dumps(obj)
    return out + "\n", code


# -- argument parsing -----------------------------------------------------------------


def parse_ks(s: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(x.strip()) for x in s.split(",") if x.strip())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="krallcremona",
                                 description="Cremona maps from Krall-Jacobi polynomials, exactly.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--family", choices=FAMILIES, required=True)
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--k", type=parse_ks, default=(), help="p/q, or a comma list for evidence")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--out")
    ap.add_argument("--cache-dir")
    ap.add_argument("--no-cache", action="store_true")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-timing", action="store_true", help="omit wall-clock fields from reports")
    ap.add_argument("--inverse", action="store_true", help="census of the inverse map")
    ap.add_argument("--mutate-fixture", action="store_true", help=argparse.SUPPRESS)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = JobSpec(args.command, args.family, args.n, args.k, args.format, args.out,
                       args.cache_dir, args.threads, args.seed, not args.no_timing,
                       args.mutate_fixture, args.inverse, not args.no_cache)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        out, code = run(spec)
    except Degenerate as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return 1
    except Exception:  # noqa: BLE001 - mapped to exit code 2
        traceback.print_exc()
        return 2
    if spec.out:
        with open(spec.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
