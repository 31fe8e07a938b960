"""Published closed forms, transcribed as exact polynomials.

Affine forms are written over (parameters, k) and homogenized with h.
Known typesetting slips are read as recorded in the decisions ledger.
"""
from __future__ import annotations

from fractions import Fraction

from krallcremona.exactpoly import MultiPoly, VarSet
from krallcremona.paramlift import homogenize, map_degree, map_varset

F = Fraction


def vars_for(family: str, n: int):
    vs = map_varset(family, n)
    return vs, {name: MultiPoly.var(vs, name) for name in vs.names}


def _hom(family, n, comps):
    vs = map_varset(family, n)
    return [homogenize(c, map_degree(family, n), vs) for c in comps]


def _affine(family, n):
    """Variable set without h, so homogenize() can add it."""
    vs = VarSet(tuple(v for v in map_varset(family, n).names if v != "h"))
    return vs, {name: MultiPoly.var(vs, name) for name in vs.names}


# -- one-sided ------------------------------------------------------------------


def one_n1():
    _, v = _affine("one", 1)
    k, l0 = v["k"], v["l0"]

    def Fk(k):
        return 1 + k * (k + 1) / 2 * l0

    return _hom("one", 1, [Fk(k), Fk(k + 1)])


def one_n2_printed_coordinates():
    """(F(k) : E(k) : F(k+1)) in the printed scaling of l0, l1."""
    _, v = _affine("one", 2)
    k, l0, l1 = v["k"], v["l0"], v["l1"]

    def Fk(k):
        return 1 + k * (k + 2) * (l0 + 6 * (k * k + 2 * k - 1) * l1
                                  - 3 * (k - 1) * k * (k + 1) ** 2 * (k + 2) * (k + 3) * l1 ** 2)

    E = 1 + (k + 1) * (k + 2) * (l0 + 3 * k * (k + 3) * (2 - (k - 1) * (k + 1) * (k + 2) * (k + 4) * l1) * l1)
    return _hom("one", 2, [Fk(k), E, Fk(k + 1)])


def one_n2_L2_printed():
    """3k(k+1)(k+2)(k+3) l1 - h, printed scaling."""
    vs, v = vars_for("one", 2)
    k = v["k"]
    return 3 * k * (k + 1) * (k + 2) * (k + 3) * v["l1"] - v["h"]


# leading terms of E, F (n = 3) and D, E, F (n = 4): (component index, {monomial: coefficient(k)})
def one_leading_terms(n: int):
    vs, v = vars_for("one", n)
    k, h = v["k"], v["h"]
    l0, l1 = v["l0"], v["l1"]
    hn, hn1 = h ** n, h ** (n - 1)
    if n == 3:
        F_ = [(hn, 1), (hn1 * l0, k * (k + 3) / 2), (hn1 * l1, k * (k + 3) * (k * k + 3 * k - 1) / 4)]
        E_ = [(hn, 1), (hn1 * l0, (k + 3) * (3 * k + 2) / 6),
              (hn1 * l1, k * (k + 3) * (3 * k * k + 13 * k + 9) / 12)]
        return {0: F_, 1: E_}
    if n == 4:
        F_ = [(hn, 1), (hn1 * l0, k * (k + 4) / 2), (hn1 * l1, k * (k + 4) * (k * k + 4 * k - 1) / 4)]
        E_ = [(hn, 1), (hn1 * l0, (k + 4) * (2 * k + 1) / 4),
              (hn1 * l1, k * (k + 4) * (k * k + 5 * k + 3) / 4)]
        D_ = [(hn, 1), (hn1 * l0, (2 * k * k + 10 * k + 7) / 4),
              (hn1 * l1, (3 * k ** 4 + 30 * k ** 3 + 92 * k * k + 85 * k + 21) / 12)]
        return {0: F_, 1: E_, 2: D_}
    raise ValueError(n)


ONE_SIDED_SHAPE = {3: (18, 9), 4: (32, 21)}  # (degree in k, monomials per component)


def s_leading(family: str, n: int):
    """(monomial, coefficient in k) of the printed leading term of S."""
    vs, v = vars_for(family, n)
    k = v["k"]
    if (family, n) == ("one", 3):
        c = (k - 1) * k ** 2 * (k + 1) ** 2 * (k + 2) ** 2 * (k + 3) ** 2 * (k + 4) ** 2 * (k + 5)
        return v["l2"] ** 2, c
    if (family, n) == ("one", 4):
        c = ((k - 2) * (k - 1) ** 2 * k ** 3 * (k + 1) ** 3 * (k + 2) ** 3 * (k + 3) ** 3 * (k + 4) ** 3
             * (k + 5) ** 3 * (k + 6) ** 2 * (k + 7))
        return v["l3"] ** 3, c
    if (family, n) == ("two", 2):
        c = (k - 2) * (k - 1) ** 2 * k ** 3 * (k + 1) ** 3 * (k + 2) ** 2 * (k + 3)
        return v["l1"] ** 2 * v["r1"], c
    raise ValueError((family, n))


# -- two-sided ---------------------------------------------------------------------


def two_n1():
    _, v = _affine("two", 1)
    k, l0, r0 = v["k"], v["l0"], v["r0"]

    def H(k):
        return 1 + k * k / 2 * (l0 + r0 + (k * k - 1) / 2 * l0 * r0)

    return _hom("two", 1, [H(k), l0 - r0, H(k + 1)])


def two_n2():
    """(H : K + L : J : K(k+1) + L(k+1) : H(k+1)), reading the factor n^2 in L as k^2."""
    _, v = _affine("two", 2)
    k = v["k"]
    L = (v["l0"], v["l1"])
    R = (v["r0"], v["r1"])
    l0, l1 = L
    r0, r1 = R

    def H0(k, d):
        return 1 + (k - 1) * k * (d[0] + (k - 2) * (k + 1) * (6 - 3 * (k - 3) * (k - 1) * k * (k + 2) * d[1]) * d[1])

    def H(k):
        return ((H0(k, L) * H0(k + 1, R) + H0(k, R) * H0(k + 1, L)) / 2
                - 36 * (k * k - 1) * k * k * (l1 - r1) ** 2)

    def J0(k, d):
        return (1 + (k * k + k + 3) * d[0] + 6 * (k ** 4 + 2 * k ** 3 + k * k + 6) * d[1]
                - 3 * (k * k - 9) * (k * k - 4) * (k * k - 1) * k * (k + 4) * d[1] ** 2)

    def J1(k, d):
        return 1 + k * (k + 1) * (d[0] + 3 * (k - 1) * (k + 2) * (2 - (k - 2) * k * (k + 1) * (k + 3) * d[1]) * d[1])

    def J(k):
        return ((J0(k, L) * J1(k, R) + J0(k, R) * J1(k, L)) / 2
                + 108 * (k * k - 1) * k * (k + 2) * (l1 - r1) ** 2)

    def K0(k):
        return 1 - F(3, 2) * (k * k - 1) * k * (k + 2) * (l1 + r1)

    def K(k):
        return (l0 - r0) * K0(k) * K0(-k)

    def Lf(k):
        inner = (16 + 4 * (k * k - 1) * (l0 + r0 - 4 * (k * k - 1) * (l1 + r1))
                 - 3 * (k * k - 4) * (k * k - 1) ** 2 * (3 * l0 * r1 + 3 * l1 * r0 + l0 * l1 + r0 * r1
                                                        + 16 * (k * k - 6) * l1 * r1))
        return 3 * (l1 - r1) * k * k * inner / 4

    comps = [H(k), K(k) + Lf(k), J(k), K(k + 1) + Lf(k + 1), H(k + 1)]
    return _hom("two", 2, comps)


TWO_N2_SHAPE = {0: (16, 16), 2: (16, 16), 1: (10, 12)}  # component: (degree in k, monomials)


# -- inverse maps ---------------------------------------------------------------------


def jvars(count: int):
    vs = VarSet(tuple(f"j{i}" for i in range(count)) + ("k",))
    return vs, {name: MultiPoly.var(vs, name) for name in vs.names}


def gamma(family: str, n: int) -> MultiPoly:
    if family == "one":
        vs, v = jvars(n + 1)
    else:
        vs, v = jvars(2 * n + 1)
    k = v["k"]
    j = [v[f"j{i}"] for i in range(len(vs) - 1)]
    if (family, n) == ("one", 2):
        return (k + 1) * (k + 3) * (k + 4) * j[0] - k * (k + 3) * (2 * k + 3) * j[1] + (k - 1) * k * (k + 2) * j[2]
    if (family, n) == ("one", 3):
        return ((k + 1) * (k + 4) * (k + 5) * (k + 6) * (2 * k + 3) * j[0]
                - 3 * k * (k + 1) * (k + 4) * (k + 5) * (2 * k + 5) * j[1]
                + 3 * (k - 1) * k * (k + 3) * (k + 4) * (2 * k + 3) * j[2]
                - (k - 2) * (k - 1) * k * (k + 3) * (2 * k + 5) * j[3])
    if (family, n) == ("two", 1):
        return 2 * (k + 1) * (k + 2) * j[0] + k * (k + 1) * (2 * k + 1) * j[1] - 2 * (k - 1) * k * j[2]
    if (family, n) == ("two", 2):
        return ((k + 1) * (k + 2) * (k + 3) * (k + 4) * (2 * k - 1) * j[0]
                + k * (k + 1) * (k + 2) * (k + 3) * (2 * k - 1) * (2 * k + 3) * j[1]
                - 2 * (k - 1) * k * (k + 1) * (k + 2) * (2 * k + 1) * j[2]
                - (k - 2) * (k - 1) * k * (k + 1) * (2 * k - 1) * (2 * k + 3) * j[3]
                + (k - 3) * (k - 2) * (k - 1) * k * (2 * k + 3) * j[4])
    raise ValueError((family, n))


def one_n2_inverse_L2():
    vs, v = jvars(3)
    k = v["k"]
    return (k + 1) * (k + 3) * v["j0"] - k * (k + 2) * v["j2"]


def two_n1_inverse():
    """(2 H Gamma : 2 LR(H) LR(Gamma) : Gamma LR(Gamma)) and the line L1.

    The printed H is 2 j0 - 2(2k+1) j1 - 2 j2. Composed with the printed forward
    map that is not a multiple of the identity, with or without an overall sign;
    -2 j0 + (2k+1) j1 + 2 j2 is the reading that is.
    """
    from krallcremona.cremona.maps import lr_conjugate
    vs, v = jvars(3)
    k = v["k"]
    Hj = -2 * v["j0"] + (2 * k + 1) * v["j1"] + 2 * v["j2"]
    g = gamma("two", 1)
    gb = lr_conjugate(g)
    comps = [2 * Hj * g, 2 * lr_conjugate(Hj) * gb, g * gb]
    L1 = (k + 1) * v["j0"] + k * v["j2"]
    return comps, L1
