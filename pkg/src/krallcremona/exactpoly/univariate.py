"""Dense univariate polynomials over Q as coefficient lists (low degree first).

These helpers back interpolation, rational reconstruction and root finding
in the parameter k; they are deliberately small and list based.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

UPoly = list  # list[Fraction], index = power, no trailing zeros


def utrim(a: Sequence) -> UPoly:
    a = [Fraction(c) for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def udeg(a: UPoly) -> int:
    return len(a) - 1


def uadd(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return utrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def usub(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return utrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def uscale(a: UPoly, c) -> UPoly:
    c = Fraction(c)
    return [] if c == 0 else [x * c for x in a]


def umul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return utrim(out)


def udivmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(r) - 1 < db:
        return [], utrim(r)
    q = [Fraction(0)] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        c = r[i + db] / lb
        q[i] = c
        if c:
            for j in range(db + 1):
                r[i + j] -= c * b[j]
    return utrim(q), utrim(r[:db])


def umonic(a: UPoly) -> UPoly:
    return uscale(a, 1 / a[-1]) if a else []


def ugcd(a: UPoly, b: UPoly) -> UPoly:
    a, b = utrim(a), utrim(b)
    while b:
        a, b = b, udivmod(a, b)[1]
    return umonic(a)


def ueval(a: UPoly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def ucompose_linear(a: UPoly, s, t) -> UPoly:
    """a(s*k + t) as a list."""
    out: UPoly = []
    lin = utrim([t, s])
    for c in reversed(a):
        out = uadd(umul(out, lin), [c] if c else [])
    return out


def newton_interpolate(xs: Sequence, ys: Sequence) -> UPoly:
    """Unique polynomial of degree < len(xs) through the points (x_i, y_i)."""
    xs = [Fraction(x) for x in xs]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be distinct")
    coef = [Fraction(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out: UPoly = []
    for i in range(n - 1, -1, -1):
        out = uadd(umul(out, [-xs[i], Fraction(1)]), [coef[i]])
    return out


def rational_reconstruct(xs: Sequence, ys: Sequence, max_num_deg: int | None = None):
    """Candidates (num, den) with num/den through the points, from the extended
    Euclidean sequence on (prod(k - x_i), interpolant); den monic, lowest
    total degree first."""
    xs = [Fraction(x) for x in xs]
    p = newton_interpolate(xs, ys)
    m: UPoly = [Fraction(1)]
    for x in xs:
        m = umul(m, [-x, Fraction(1)])
    r0, r1 = m, p
    t0, t1 = [], [Fraction(1)]
    out = []
    n = len(xs)
    while True:
        if len(r1) - 1 + len(t1) - 1 < n and t1:
            if max_num_deg is None or len(r1) - 1 <= max_num_deg:
                lc = t1[-1]
                out.append((uscale(r1, 1 / lc), uscale(t1, 1 / lc)))
        if not r1:
            break
        q, r = udivmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, usub(t0, umul(q, t1))
    out.sort(key=lambda nd: (len(nd[0]) + len(nd[1]), len(nd[1])))
    return out
