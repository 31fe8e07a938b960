from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krallcremona.exactpoly import MultiPoly, VarSet
from krallcremona.krall import assemble, expansion_at_k, orthogonality_suite
from krallcremona.orthobasis import WeightSpec, jacobi, moment, pairing, symmetric_jacobi

XV = VarSet(("x",))


def test_low_degree_jacobi():
    x = MultiPoly.var(XV, "x")
    assert jacobi(0, 3, 1) == 1
    assert jacobi(1, 2, 2) == 3 * x
    assert jacobi(2, 0, 0) == (3 * x * x - 1) / 2


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6), st.integers(1, 3))
def test_jacobi_orthogonal_under_plain_weight(a, b, n):
    """With every Dirac mass zero the two-sided pairing is Legendre-type."""
    if a == b:
        return
    w = WeightSpec("two", n)
    val = pairing(jacobi(a, 0, 0), jacobi(b, 0, 0), w)
    assert val.subs({p: 0 for p in w.params if p in val.vs}).constant_term() == 0


def test_dirac_moments():
    # one-sided n=1: L(1) = int (1-x) + l0 * (1-x)|_{-1}
    assert moment(WeightSpec("one", 1), 0) == (Fraction(2), Fraction(2))
    # two-sided n=1: L(x) = 0 - l0 + r0
    assert moment(WeightSpec("two", 1), 1) == (Fraction(0), Fraction(-1), Fraction(1))


def test_weight_spec_validation():
    with pytest.raises(ValueError):
        WeightSpec("three", 1)
    with pytest.raises(ValueError):
        WeightSpec("one", 0)


@pytest.mark.parametrize("family,n,k", [("one", 1, 3), ("one", 2, 5), ("two", 1, 4), ("two", 2, 6)])
def test_expansion_degree_and_shape(family, n, k):
    e = expansion_at_k(family, n, k)
    bound = n if family == "one" else 2 * n
    assert len(e.coeffs) == WeightSpec(family, n).width
    assert all(c.degree() <= bound for c in e.coeffs if c)
    q = assemble(e)
    assert q.degree_in("x") == k


@pytest.mark.parametrize("family,n", [("one", 1), ("one", 2), ("two", 1), ("two", 2)])
def test_orthogonality_suite(family, n):
    res = orthogonality_suite(family, n, n + 3)
    assert res["ok"], res


def test_symmetric_jacobi_parity():
    p = symmetric_jacobi(3, 2)
    x = MultiPoly.var(p.vs, "x")
    assert p.subs({"x": -1}) == -p.subs({"x": 1})
