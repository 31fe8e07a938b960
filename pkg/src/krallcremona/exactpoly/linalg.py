"""Exact linear algebra over Q and over polynomial rings."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .gcd import gcd_many
from .poly import MultiPoly, VarSet


class RankAnomalyError(ArithmeticError):
    """Kernel dimension differs from the expected value of one."""

    def __init__(self, rank: int, cols: int, context: str = ""):
        self.rank = rank
        self.cols = cols
        self.context = context
        msg = f"rank anomaly: rank {rank} with {cols} columns (kernel dimension {cols - rank})"
        if context:
            msg += f" [{context}]"
        super().__init__(msg)


class PolyMatrix:
    """Rectangular matrix of MultiPoly entries over one variable set."""

    __slots__ = ("rows", "vs")

    def __init__(self, rows: Sequence[Sequence[MultiPoly]], vs: VarSet | None = None):
        rows = [list(r) for r in rows]
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("matrix rows must have equal length")
        if vs is None:
            vs = rows[0][0].vs if rows and rows[0] else VarSet(())
        self.vs = vs
        self.rows = [[e.embed(vs) if isinstance(e, MultiPoly) else MultiPoly.const(vs, e)
                      for e in r] for r in rows]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def mul_vector(self, v: Sequence[MultiPoly]) -> list[MultiPoly]:
        out = []
        for r in self.rows:
            acc = MultiPoly.zero(self.vs)
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out


def rref_rational(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _bareiss_echelon(M: PolyMatrix):
    """Fraction-free row echelon form; returns (rows, pivot columns)."""
    a = [list(r) for r in M.rows]
    nr, nc = M.shape
    vs = M.vs
    prev = MultiPoly.const(vs, 1)
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        cands = [i for i in range(r, nr) if a[i][c]]
        if not cands:
            continue
        piv = min(cands, key=lambda i: len(a[i][c]))
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                t = p * a[i][j] - a[i][c] * a[r][j]
                a[i][j] = t.divexact(prev) if not prev.is_constant() else t / prev.constant_term()
            a[i][c] = MultiPoly.zero(vs)
        # entries left of the pivot in the pivot row stay zero; earlier rows untouched
        prev = p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def kernel_fraction_free(M: PolyMatrix, context: str = "") -> list[MultiPoly]:
    """Primitive generator of a one-dimensional kernel, canonical sign.

    Raises RankAnomalyError if the kernel dimension is not one.
    """
    nr, nc = M.shape
    vs = M.vs
    ech, pivots = _bareiss_echelon(M) if nr else ([], [])
    rank = len(pivots)
    if nc - rank != 1:
        raise RankAnomalyError(rank, nc, context)
    free = next(j for j in range(nc) if j not in pivots)
    v: list[MultiPoly] = [MultiPoly.zero(vs)] * nc
    v[free] = ech[-1][pivots[-1]] if ech else MultiPoly.const(vs, 1)
    for i in range(rank - 1, -1, -1):
        pc = pivots[i]
        acc = MultiPoly.zero(vs)
        for j in range(pc + 1, nc):
            if ech[i][j] and v[j]:
                acc = acc + ech[i][j] * v[j]
        v[pc] = (-acc).divexact(ech[i][pc])
    v = normalize_vector(v)
    if any(x for x in M.mul_vector(v)):
        raise ArithmeticError("kernel vector does not annihilate the matrix")
    return v


def normalize_vector(v: Sequence[MultiPoly]) -> list[MultiPoly]:
    """Divide by the gcd of the entries and make the first nonzero entry's
    leading coefficient positive; result has coprime integer coefficients."""
    nz = [x for x in v if x]
    if not nz:
        raise ValueError("zero vector")
    g = gcd_many(nz)
    out = [x.divexact(g) if x else x for x in v]
    c = _int_content(out)
    first = next(x for x in out if x)
    if first.lc() < 0:
        c = -c
    return [x.scale(1 / c) if x else x for x in out]


def _int_content(v: Sequence[MultiPoly]) -> Fraction:
    import math
    nums = []
    dens = []
    for x in v:
        if x:
            nums.append(math.gcd(*x.num.values()))
            dens.append(x.den)
    return Fraction(math.gcd(*nums), math.lcm(*dens))


def det(M: PolyMatrix) -> MultiPoly:
    """Determinant by cofactor expansion with memoized minors (division free)."""
    nr, nc = M.shape
    if nr != nc:
        raise ValueError("determinant of a non-square matrix")
    vs = M.vs
    if nr == 0:
        return MultiPoly.const(vs, 1)
    a = M.rows
    # minors of the last s rows indexed by column subsets
    last = nr - 1
    minors: dict[tuple[int, ...], MultiPoly] = {(j,): a[last][j] for j in range(nc)}
    for s in range(2, nr + 1):
        row = a[nr - s]
        new: dict[tuple[int, ...], MultiPoly] = {}
        for cols in combinations(range(nc), s):
            acc = MultiPoly.zero(vs)
            for t, j in enumerate(cols):
                if not row[j]:
                    continue
                sub = minors.get(cols[:t] + cols[t + 1:])
                if sub is None or not sub:
                    continue
                term = row[j] * sub
                acc = acc - term if t % 2 else acc + term
            new[cols] = acc
        minors = new
    return minors[tuple(range(nc))]
