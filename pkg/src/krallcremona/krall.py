"""Expansion of the Krall-Jacobi polynomials in the symmetric Jacobi basis.

For a fixed degree k the polynomial sum_i j_i J_{k-i}(x) must pair to zero
with every x^m, m < k. The pairing is affine in the Dirac parameters, so each
equation is a row of affine forms; the rows are compressed by an exact
rational row reduction (which leaves the kernel over Q(l, r) untouched) and
the one-dimensional kernel is computed fraction free.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import math
from fractions import Fraction
from functools import lru_cache

from .exactpoly.linalg import PolyMatrix, RankAnomalyError, kernel_fraction_free, rref_rational
from .exactpoly.poly import MultiPoly, VarSet
from .orthobasis import ONE_SIDED, WeightSpec, jacobi_coeffs, moment, symmetric_jacobi


class AnsatzDegreeError(ArithmeticError):
    """An expansion coefficient exceeds the degree allowed by the ansatz."""


@dataclass(frozen=True)
class ExpansionVector:
    family: str
    n: int
    k: int
    coeffs: tuple[MultiPoly, ...]
    undetermined: tuple[int, ...] = field(default=())

    @property
    def weight(self) -> WeightSpec:
        return WeightSpec(self.family, self.n)


def param_varset(w: WeightSpec) -> VarSet:
    return VarSet(w.params)


def orthogonality_rows(w: WeightSpec, k: int, compress: bool = True):
    """Rows of the orthogonality system at degree k.

    Each row is a list over the active unknowns i (those with k - i >= 0) of
    affine forms (constant, parameter coefficients...). Returns (rows, active).
    Results are memoized; treat them as read-only.
    """
    return _rows(w, k, compress)


@lru_cache(maxsize=512)
def _rows(w: WeightSpec, k: int, compress: bool):
    active = [i for i in range(w.width) if k - i >= 0]
    P = 1 + len(w.params)
    if compress:
        flat, _ = rref_rational([list(r) for r in _flat_rows(w, k)])
    else:
        flat = _flat_rows(w, k)
    rows = [[tuple(r[t * P:(t + 1) * P]) for t in range(len(active))] for r in flat]
    return rows, active


@lru_cache(maxsize=512)
def _flat_rows(w: WeightSpec, k: int):
    """Uncompressed rows, each scaled by one positive integer (row space and
    zero tests are unaffected). Computed in integer arithmetic."""
    active = [i for i in range(w.width) if k - i >= 0]
    P = 1 + len(w.params)
    moms = [moment(w, a) for a in range(2 * k)]
    mden = math.lcm(*(c.denominator for mo in moms for c in mo))
    mint = [[int(c * mden) for c in mo] for mo in moms]
    blocks = []
    for i in active:
        jc = jacobi_coeffs(k - i, w.n, w.n)
        blocks.append([(a, c.numerator, c.denominator) for a, c in enumerate(jc) if c])
    jden = math.lcm(*(d for b in blocks for _, _, d in b)) if blocks else 1
    blocks = [[(a, num * (jden // d)) for a, num, d in b] for b in blocks]
    out = []
    for m in range(k):
        row = []
        for b in blocks:
            acc = [0] * P
            for a, c in b:
                mo = mint[a + m]
                for t in range(P):
                    if mo[t]:
                        acc[t] += c * mo[t]
            row.extend(Fraction(x) for x in acc)
        out.append(tuple(row))
    return tuple(out)


def rows_to_matrix(rows, vs: VarSet, params) -> PolyMatrix:
    pv = [MultiPoly.var(vs, p) for p in params]
    out = []
    for r in rows:
        line = []
        for form in r:
            e = MultiPoly.const(vs, form[0])
            for c, v in zip(form[1:], pv):
                if c:
                    e = e + v.scale(c)
            line.append(e)
        out.append(line)
    return PolyMatrix(out, vs)


@lru_cache(maxsize=512)
def expansion_at_k(family: str, n: int, k: int) -> ExpansionVector:
    """Primitive expansion vector (j_0, ..., j_N) of the degree-k polynomial."""
    if k < 0:
        raise ValueError("k must be non-negative")
    w = WeightSpec(family, n)
    vs = param_varset(w)
    rows, active = orthogonality_rows(w, k)
    context = f"family={family} n={n} k={k}"
    if rows:
        kern = kernel_fraction_free(rows_to_matrix(rows, vs, w.params), context=context)
    elif len(active) == 1:
        kern = [MultiPoly.const(vs, 1)]
    else:
        raise RankAnomalyError(0, len(active), context)
    bound = n if family == ONE_SIDED else 2 * n
    for c in kern:
        if c and c.degree() > bound:
            raise AnsatzDegreeError(
                f"coefficient of degree {c.degree()} > {bound} at family={family} n={n} k={k}")
    coeffs = [MultiPoly.zero(vs)] * w.width
    for i, c in zip(active, kern):
        coeffs[i] = c
    e = ExpansionVector(family, n, k, tuple(coeffs),
                        tuple(i for i in range(w.width) if i not in active))
    _check_full_system(e)
    return e


def _check_full_system(e: ExpansionVector) -> None:
    """Every uncompressed orthogonality equation vanishes identically."""
    w = e.weight
    rows, active = orthogonality_rows(w, e.k, compress=False)
    if not rows:
        return
    vs = param_varset(w)
    M = rows_to_matrix(rows, vs, w.params)
    v = [e.coeffs[i] for i in active]
    for r in M.mul_vector(v):
        if r:
            raise ArithmeticError(f"expansion fails orthogonality at k={e.k}")


def assemble(e: ExpansionVector) -> MultiPoly:
    """sum_i coeffs[i] * J_{k-i}(x) over the parameters and x."""
    w = e.weight
    vs = VarSet(w.params + ("x",))
    out = MultiPoly.zero(vs)
    for i, c in enumerate(e.coeffs):
        if c and e.k - i >= 0:
            out = out + c.embed(vs) * symmetric_jacobi(e.k - i, e.n).embed(vs)
    return out


def orthogonality_suite(family: str, n: int, K: int, vectors=None) -> dict:
    """Check pairing(Q_a, Q_b) == 0 for all 0 <= b < a <= K."""
    from .orthobasis import pairing
    w = WeightSpec(family, n)
    if vectors is None:
        vectors = [expansion_at_k(family, n, k) for k in range(K + 1)]
    polys = [assemble(v) for v in vectors]
    checked = 0
    for a in range(K + 1):
        for b in range(a):
            val = pairing(polys[a], polys[b], w)
            checked += 1
            if val:
                return {"ok": False, "pairs_checked": checked, "failure": [a, b]}
    return {"ok": True, "pairs_checked": checked, "failure": None}
