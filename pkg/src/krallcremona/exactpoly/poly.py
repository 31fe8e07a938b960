"""Sparse multivariate polynomials over Q.

Monomials are packed into Python ints: one 16-bit field per variable plus a
leading total-degree field, so integer comparison of packed monomials is the
graded-lexicographic order and monomial multiplication is integer addition.
Coefficients are kept as an integer numerator dict over one positive common
denominator.
"""
from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

_W = 16
_FMASK = (1 << _W) - 1
_GUARD_BIT = 1 << (_W - 1)


class VarSetError(ValueError):
    """Two polynomials live over variable sets that cannot be reconciled."""


class NotDivisibleError(ArithmeticError):
    pass


class VarSet:
    """Ordered, interned tuple of variable names.

    Instances are cached per name tuple, so identity comparison is equality.
    """

    __slots__ = ("names", "index", "shifts", "units", "degshift", "degunit", "guard")
    _cache: dict[tuple[str, ...], "VarSet"] = {}

    def __new__(cls, names: Iterable[str]):
        names = tuple(names)
        vs = cls._cache.get(names)
        if vs is not None:
            return vs
        if len(set(names)) != len(names):
            raise VarSetError(f"duplicate variable names in {names}")
        vs = object.__new__(cls)
        nv = len(names)
        vs.names = names
        vs.index = {n: i for i, n in enumerate(names)}
        vs.shifts = tuple(_W * (nv - 1 - i) for i in range(nv))
        vs.units = tuple(1 << s for s in vs.shifts)
        vs.degshift = _W * nv
        vs.degunit = 1 << vs.degshift
        g = _GUARD_BIT << vs.degshift
        for s in vs.shifts:
            g |= _GUARD_BIT << s
        vs.guard = g
        cls._cache[names] = vs
        return vs

    def __reduce__(self):
        return (VarSet, (self.names,))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self.index

    def __repr__(self) -> str:
        return f"VarSet({list(self.names)})"

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != len(self.names):
            raise VarSetError(f"exponent vector {tuple(exps)} does not match {self.names}")
        d = 0
        m = 0
        for e, s in zip(exps, self.shifts):
            if e < 0 or e >= _GUARD_BIT:
                raise OverflowError(f"exponent {e} out of range")
            d += e
            m |= e << s
        if d >= _GUARD_BIT:
            raise OverflowError(f"total degree {d} out of range")
        return m | (d << self.degshift)

    def unpack(self, m: int) -> tuple[int, ...]:
        return tuple((m >> s) & _FMASK for s in self.shifts)

    def exponent(self, m: int, i: int) -> int:
        return (m >> self.shifts[i]) & _FMASK

    def degree(self, m: int) -> int:
        return m >> self.degshift

    def divides(self, a: int, b: int) -> bool:
        """True if monomial ``a`` divides monomial ``b``."""
        g = self.guard
        return ((b | g) - a) & g == g

    def var_unit(self, i: int) -> int:
        return self.units[i] + self.degunit

    def union(self, other: "VarSet") -> "VarSet":
        extra = [n for n in other.names if n not in self.index]
        return VarSet(self.names + tuple(extra)) if extra else self

    def without(self, names: Iterable[str]) -> "VarSet":
        drop = set(names)
        return VarSet(n for n in self.names if n not in drop)


def _embed_map(src: VarSet, dst: VarSet):
    return [dst.index[n] for n in src.names]


def common_varset(a: VarSet, b: VarSet) -> VarSet:
    if a is b:
        return a
    sa, sb = set(a.names), set(b.names)
    if sa <= sb:
        return b
    if sb <= sa:
        return a
    raise VarSetError(f"incompatible variable sets {a.names} and {b.names}")


def _normalize(c: dict[int, int], d: int) -> tuple[dict[int, int], int]:
    if d < 0:
        c = {m: -v for m, v in c.items()}
        d = -d
    if d != 1 and c:
        g = math.gcd(d, *c.values())
        if g != 1:
            c = {m: v // g for m, v in c.items()}
            d //= g
    if not c:
        d = 1
    return c, d


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class MultiPoly:
    """Immutable sparse polynomial with rational coefficients.

    ``_c`` maps packed monomials to integer numerators, ``_d`` is the common
    positive denominator, reduced so that gcd(numerators, _d) == 1.
    """

    __slots__ = ("vs", "_c", "_d", "_hash")

    def __init__(self, vs: VarSet, coeffs: dict[int, int] | None = None, den: int = 1,
                 *, normalized: bool = False):
        self.vs = vs
        if coeffs is None:
            coeffs = {}
        if not normalized:
            coeffs = {m: v for m, v in coeffs.items() if v}
            coeffs, den = _normalize(coeffs, den)
        self._c = coeffs
        self._d = den
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, vs: VarSet) -> "MultiPoly":
        return cls(vs, {}, 1, normalized=True)

    @classmethod
    def const(cls, vs: VarSet, value) -> "MultiPoly":
        f = _as_fraction(value)
        if f == 0:
            return cls.zero(vs)
        return cls(vs, {0: f.numerator}, f.denominator, normalized=True)

    @classmethod
    def var(cls, vs: VarSet, name: str, power: int = 1) -> "MultiPoly":
        i = vs.index[name]
        return cls(vs, {vs.var_unit(i) * power: 1}, 1, normalized=True)

    @classmethod
    def from_terms(cls, vs: VarSet, terms: Mapping[Sequence[int], object]) -> "MultiPoly":
        fr = {vs.pack(e): _as_fraction(c) for e, c in terms.items()}
        return cls.from_packed(vs, fr)

    @classmethod
    def from_packed(cls, vs: VarSet, terms: Mapping[int, object]) -> "MultiPoly":
        fr = {m: _as_fraction(c) for m, c in terms.items() if c != 0}
        if not fr:
            return cls.zero(vs)
        d = math.lcm(*(f.denominator for f in fr.values()))
        c = {m: f.numerator * (d // f.denominator) for m, f in fr.items()}
        return cls(vs, c, d)

    @classmethod
    def from_int_dict(cls, vs: VarSet, c: dict[int, int], den: int = 1) -> "MultiPoly":
        return cls(vs, c, den)

    # basic views ----------------------------------------------------------

    @property
    def num(self) -> dict[int, int]:
        return self._c

    @property
    def den(self) -> int:
        return self._d

    def __len__(self) -> int:
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def constant_term(self) -> Fraction:
        return Fraction(self._c.get(0, 0), self._d)

    def coeff_packed(self, m: int) -> Fraction:
        return Fraction(self._c.get(m, 0), self._d)

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.coeff_packed(self.vs.pack(exps))

    def monomials(self) -> list[int]:
        return sorted(self._c, reverse=True)

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """Exponent tuple -> coefficient, in descending graded-lex order."""
        vs, d = self.vs, self._d
        return {vs.unpack(m): Fraction(self._c[m], d) for m in self.monomials()}

    def leading_monomial(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._c)

    def lc(self) -> Fraction:
        return Fraction(self._c[self.leading_monomial()], self._d)

    def degree(self) -> int:
        if not self._c:
            return -1
        return max(self._c) >> self.vs.degshift

    def min_degree(self) -> int:
        if not self._c:
            return -1
        ds = self.vs.degshift
        return min(m >> ds for m in self._c)

    def is_homogeneous(self) -> bool:
        ds = self.vs.degshift
        return len({m >> ds for m in self._c}) <= 1

    def degree_in(self, name: str) -> int:
        if not self._c:
            return -1
        s = self.vs.shifts[self.vs.index[name]]
        return max((m >> s) & _FMASK for m in self._c)

    def degree_in_vars(self, names: Iterable[str]) -> int:
        """Maximal joint degree in the given subset of variables."""
        if not self._c:
            return -1
        shifts = [self.vs.shifts[self.vs.index[n]] for n in names if n in self.vs.index]
        return max(sum((m >> s) & _FMASK for s in shifts) for m in self._c)

    def variables(self) -> tuple[str, ...]:
        """Names of the variables that actually occur."""
        vs = self.vs
        present = 0
        for m in self._c:
            present |= m
        return tuple(n for n, s in zip(vs.names, vs.shifts) if (present >> s) & _FMASK)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        from .serialize import to_text
        return to_text(self)

    # equality / hashing ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            try:
                f = _as_fraction(other)
            except (TypeError, ValueError):
                return NotImplemented
            return self.is_constant() and self.constant_term() == f
        if other.vs is not self.vs:
            try:
                vs = common_varset(self.vs, other.vs)
            except VarSetError:
                return False
            return self.embed(vs)._eqsame(other.embed(vs))
        return self._eqsame(other)

    def _eqsame(self, other: "MultiPoly") -> bool:
        return self._d == other._d and self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vs.names, self._d, frozenset(self._c.items())))
        return self._hash

    # varset handling -------------------------------------------------------

    def embed(self, vs: VarSet) -> "MultiPoly":
        """Re-express over a variable set containing all of this one's names."""
        if vs is self.vs:
            return self
        src = self.vs
        idx = _embed_map(src, vs)
        out = {}
        for m, c in self._c.items():
            e = src.unpack(m)
            nm = (m >> src.degshift) << vs.degshift
            for i, ei in enumerate(e):
                if ei:
                    nm |= ei << vs.shifts[idx[i]]
            out[nm] = c
        return MultiPoly(vs, out, self._d, normalized=True)

    def restrict(self, vs: VarSet) -> "MultiPoly":
        """Re-express over a smaller variable set; dropped variables must be absent."""
        if vs is self.vs:
            return self
        missing = [n for n in self.variables() if n not in vs.index]
        if missing:
            raise VarSetError(f"variables {missing} occur and cannot be dropped")
        src = self.vs
        keep = [(src.shifts[src.index[n]], vs.shifts[i]) for i, n in enumerate(vs.names)
                if n in src.index]
        out = {}
        for m, c in self._c.items():
            nm = (m >> src.degshift) << vs.degshift
            for s_src, s_dst in keep:
                e = (m >> s_src) & _FMASK
                if e:
                    nm |= e << s_dst
            out[nm] = c
        return MultiPoly(vs, out, self._d, normalized=True)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(self.vs, other)

    def _align(self, other: "MultiPoly"):
        if other.vs is self.vs:
            return self, other
        vs = common_varset(self.vs, other.vs)
        return self.embed(vs), other.embed(vs)

    # arithmetic --------------------------------------------------------------

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vs, {m: -c for m, c in self._c.items()}, self._d, normalized=True)

    def __pos__(self):
        return self

    def _addsub(self, other, sign: int) -> "MultiPoly":
        a, b = self._align(self._coerce(other))
        if not b._c:
            return a
        if not a._c:
            return b if sign > 0 else -b
        da, db = a._d, b._d
        if da == db:
            fa = fb = 1
            d = da
        else:
            d = da // math.gcd(da, db) * db
            fa, fb = d // da, d // db
        out = dict(a._c) if fa == 1 else {m: c * fa for m, c in a._c.items()}
        get = out.get
        if sign < 0:
            fb = -fb
        for m, c in b._c.items():
            v = get(m, 0) + c * fb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        if d == 1:
            return MultiPoly(a.vs, out, 1, normalized=True)
        return MultiPoly(a.vs, out, d)

    def __add__(self, other):
        return self._addsub(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __rsub__(self, other):
        return (-self)._addsub(other, 1)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        a, b = self._align(other)
        if not a._c or not b._c:
            return MultiPoly.zero(a.vs)
        if a.degree() + b.degree() >= _GUARD_BIT:
            raise OverflowError("product degree out of range")
        out = _mul_dicts(a._c, b._c)
        d = a._d * b._d
        if d == 1:
            return MultiPoly(a.vs, out, 1, normalized=True)
        return MultiPoly(a.vs, out, d)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, value) -> "MultiPoly":
        f = _as_fraction(value)
        if f == 0 or not self._c:
            return MultiPoly.zero(self.vs)
        if f == 1:
            return self
        n = f.numerator
        return MultiPoly(self.vs, {m: c * n for m, c in self._c.items()}, self._d * f.denominator)

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            return self.divexact(other)
        return self.scale(1 / _as_fraction(other))

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(self.vs, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, m: int, coeff=1) -> "MultiPoly":
        f = _as_fraction(coeff)
        n = f.numerator
        return MultiPoly(self.vs, {k + m: c * n for k, c in self._c.items()},
                         self._d * f.denominator)

    # content -----------------------------------------------------------------

    def integer_content(self) -> Fraction:
        """Rational content: gcd of numerators over the denominator, sign of the lc."""
        if not self._c:
            return Fraction(0)
        g = math.gcd(*self._c.values())
        if self._c[max(self._c)] < 0:
            g = -g
        return Fraction(g, self._d)

    def primitive_integer(self) -> "MultiPoly":
        """Integer polynomial with coprime coefficients and positive leading coefficient."""
        if not self._c:
            return self
        g = math.gcd(*self._c.values())
        if self._c[max(self._c)] < 0:
            g = -g
        if g == 1:
            return MultiPoly(self.vs, self._c, 1, normalized=True)
        return MultiPoly(self.vs, {m: c // g for m, c in self._c.items()}, 1, normalized=True)

    def monic(self) -> "MultiPoly":
        if not self._c:
            return self
        return self.scale(1 / self.lc())

    # calculus / substitution ---------------------------------------------------

    def derivative(self, name: str) -> "MultiPoly":
        vs = self.vs
        i = vs.index[name]
        s = vs.shifts[i]
        unit = vs.var_unit(i)
        out = {}
        for m, c in self._c.items():
            e = (m >> s) & _FMASK
            if e:
                out[m - unit] = c * e
        return MultiPoly(vs, out, self._d)

    def subs(self, values: Mapping[str, object]) -> "MultiPoly":
        """Substitute rational values for variables (the variable set is kept)."""
        p = self
        for name, value in values.items():
            p = p._subs_one(name, _as_fraction(value))
        return p

    def _subs_one(self, name: str, v: Fraction) -> "MultiPoly":
        vs = self.vs
        if name not in vs.index or not self._c:
            return self
        i = vs.index[name]
        s = vs.shifts[i]
        unit = vs.var_unit(i)
        emax = max((m >> s) & _FMASK for m in self._c)
        if emax == 0:
            return self
        p, q = v.numerator, v.denominator
        ppow = [1] * (emax + 1)
        qpow = [1] * (emax + 1)
        for e in range(1, emax + 1):
            ppow[e] = ppow[e - 1] * p
            qpow[e] = qpow[e - 1] * q
        out: dict[int, int] = {}
        get = out.get
        for m, c in self._c.items():
            e = (m >> s) & _FMASK
            nm = m - e * unit
            out[nm] = get(nm, 0) + c * ppow[e] * qpow[emax - e]
        return MultiPoly(vs, out, self._d * qpow[emax])

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        p = self.subs(values)
        if not p.is_constant():
            raise ValueError(f"variables {p.variables()} left unassigned")
        return p.constant_term()

    def compose(self, images: Sequence["MultiPoly"], target: VarSet | None = None) -> "MultiPoly":
        """Substitute ``images[i]`` for the i-th variable of this polynomial's varset."""
        return compose(self, images, target)

    # division ------------------------------------------------------------------

    def divexact(self, other: "MultiPoly") -> "MultiPoly":
        q = self.try_divide(other)
        if q is None:
            raise NotDivisibleError("polynomial division is not exact")
        return q

    def try_divide(self, other) -> "MultiPoly | None":
        """Exact quotient or None."""
        other = self._coerce(other)
        a, b = self._align(other)
        if not b._c:
            raise ZeroDivisionError("division by zero polynomial")
        if not a._c:
            return a
        if b.is_constant():
            return a.scale(1 / b.constant_term())
        cb = b.integer_content()
        bp = b.primitive_integer()
        q = _divexact_int(a.vs, a._c, bp._c)
        if q is None:
            return None
        return MultiPoly(a.vs, q, a._d).scale(1 / cb)

    def divides(self, other) -> bool:
        return other.try_divide(self) is not None

    def multiplicity(self, factor: "MultiPoly") -> tuple[int, "MultiPoly"]:
        """Largest e with factor^e | self, and the cofactor."""
        if factor.is_constant():
            raise ValueError("multiplicity of a constant is undefined")
        e = 0
        p = self
        if p.is_zero():
            raise ValueError("multiplicity in the zero polynomial is undefined")
        while True:
            q = p.try_divide(factor)
            if q is None:
                return e, p
            p = q
            e += 1


def _mul_dicts(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        (mb, cb), = b.items()
        return {ma + mb: ca * cb for ma, ca in a.items()}
    out: dict[int, int] = {}
    get = out.get
    aitems = list(a.items())
    for mb, cb in b.items():
        for ma, ca in aitems:
            m = ma + mb
            out[m] = get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def _divexact_int(vs: VarSet, num: dict[int, int], den: dict[int, int]) -> dict[int, int] | None:
    # den is primitive over Z, so an exact quotient of integer num is integral.
    dm = max(den)
    dc = den[dm]
    rest = [(m - dm, c) for m, c in den.items() if m != dm]
    rem = dict(num)
    heap = [-m for m in rem]
    heapq.heapify(heap)
    q: dict[int, int] = {}
    g = vs.guard
    while rem:
        rm = -heapq.heappop(heap)
        rc = rem.pop(rm, None)
        if rc is None:
            continue
        if ((rm | g) - dm) & g != g:
            return None
        qc, r = divmod(rc, dc)
        if r:
            return None
        qm = rm - dm
        q[qm] = qc
        for off, c in rest:
            t = qm + dm + off
            v = rem.get(t, 0) - qc * c
            if v:
                if t not in rem:
                    heapq.heappush(heap, -t)
                rem[t] = v
            else:
                rem.pop(t, None)
    return q


def compose(p: MultiPoly, images: Sequence[MultiPoly], target: VarSet | None = None) -> MultiPoly:
    """Substitute polynomials for all variables of ``p`` (Horner on each variable)."""
    vs = p.vs
    if len(images) != len(vs):
        raise VarSetError(f"need {len(vs)} images, got {len(images)}")
    if target is None:
        target = images[0].vs if images else vs
        for im in images[1:]:
            target = common_varset(target, im.vs)
    imgs = [im.embed(target) for im in images]
    if not p._c:
        return MultiPoly.zero(target)
    terms = [(vs.unpack(m), c) for m, c in p._c.items()]
    powcache: dict[tuple[int, int], MultiPoly] = {}

    def power(i: int, e: int) -> MultiPoly:
        key = (i, e)
        r = powcache.get(key)
        if r is None:
            if e == 1:
                r = imgs[i]
            elif e % 2 == 0:
                h = power(i, e // 2)
                r = h * h
            else:
                r = power(i, e - 1) * imgs[i]
            powcache[key] = r
        return r

    def rec(group, i: int) -> MultiPoly:
        if i == len(imgs):
            total = sum(c for _, c in group)
            return MultiPoly(target, {0: total} if total else {}, 1, normalized=True)
        buckets: dict[int, list] = {}
        for e, c in group:
            buckets.setdefault(e[i], []).append((e, c))
        exps = sorted(buckets, reverse=True)
        acc = None
        prev = None
        for e in exps:
            sub = rec(buckets[e], i + 1)
            if acc is None:
                acc = sub
            else:
                acc = acc * power(i, prev - e) + sub
            prev = e
        if prev:
            acc = acc * power(i, prev)
        return acc

    out = rec(terms, 0)
    return MultiPoly(target, out._c, out._d * p._d) if p._d != 1 else out


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def poly_derivative(p: MultiPoly, name: str) -> MultiPoly:
    return p.derivative(name)


def definite_integral_unit(p: MultiPoly, name: str = "x") -> MultiPoly:
    """Exact integral over [-1, 1] in ``name``; the result no longer involves it."""
    vs = p.vs
    i = vs.index[name]
    s = vs.shifts[i]
    unit = vs.var_unit(i)
    out: dict[int, Fraction] = {}
    for m, c in p._c.items():
        e = (m >> s) & _FMASK
        if e % 2:
            continue
        nm = m - e * unit
        out[nm] = out.get(nm, 0) + Fraction(2 * c, e + 1)
    return MultiPoly.from_packed(vs, out).scale(Fraction(1, p._d))
