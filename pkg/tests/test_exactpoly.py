from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krallcremona.exactpoly import (MultiPoly, NotDivisibleError, PolyMatrix, VarSet, compose, det,
                                    kernel_fraction_free, multivariate_gcd, nth_root, poly_loads,
                                    poly_dumps, rational_roots, reconstruct_rational, rref_rational,
                                    squarefree_decomposition, to_upoly)
from krallcremona.exactpoly.roots import NOT_PERFECT_POWER

VS = VarSet(("x", "y", "z"))
X, Y, Z = (MultiPoly.var(VS, v) for v in "xyz")

small = st.integers(-4, 4)


@st.composite
def polys(draw, max_terms=5):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = (draw(st.integers(0, 3)), draw(st.integers(0, 3)), draw(st.integers(0, 2)))
        terms[e] = Fraction(draw(small), draw(st.integers(1, 3)))
    return MultiPoly.from_terms(VS, terms)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_exact_division_roundtrip(a, b):
    if b.is_zero():
        return
    assert (a * b).divexact(b) == a


def test_divexact_rejects_remainder():
    with pytest.raises(NotDivisibleError):
        (X * X + 1).divexact(X + 1)


@settings(max_examples=30, deadline=None)
@given(polys(), polys(), polys(max_terms=3))
def test_gcd_recovers_common_factor(a, b, g):
    if a.is_zero() or b.is_zero() or g.is_zero():
        return
    d = multivariate_gcd(a * g, b * g)
    assert (a * g).try_divide(d) is not None
    assert (b * g).try_divide(d) is not None
    assert d.try_divide(g) is not None


@settings(max_examples=40, deadline=None)
@given(polys())
def test_serialization_roundtrip(p):
    assert poly_loads(poly_dumps(p)) == p


def test_compose_and_derivative():
    p = X * X * Y + 3 * Z
    q = compose(p, [Y + 1, Z, X], VS)
    assert q == (Y + 1) ** 2 * Z + 3 * X
    assert p.derivative("x") == 2 * X * Y


def test_nth_root():
    assert nth_root((X + 2 * Y) ** 3 * 8, 3) == 2 * (X + 2 * Y)
    assert nth_root(X * X + Y, 2) is NOT_PERFECT_POWER


def test_rational_roots_and_squarefree():
    u = to_upoly((2 * X + 1) * (X - 3) ** 2 * (X * X + 1), "x")
    roots = dict(rational_roots(u)[0])
    assert roots == {Fraction(-1, 2): 1, Fraction(3): 2}
    sq = squarefree_decomposition((X + Y) ** 3 * (X - Z))
    assert sorted(m for _, m in sq) == [1, 3]


def test_linear_algebra():
    m = PolyMatrix([[X, Y], [Y, X]])
    assert det(m) == X * X - Y * Y
    kern = kernel_fraction_free(PolyMatrix([[X, -Y]]))
    assert X * kern[0] - Y * kern[1] == 0
    rows, piv = rref_rational([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert piv == [0, 1]


def test_rational_reconstruction():
    xs = list(range(1, 8))
    ys = [Fraction(x * x + 1, x - 10) for x in xs]
    num, den = reconstruct_rational(xs, ys, check_xs=[20, 21], check_ys=[Fraction(401, 10), Fraction(442, 11)])
    from krallcremona.exactpoly.univariate import ueval
    assert ueval(num, 30) / ueval(den, 30) == Fraction(901, 20)
