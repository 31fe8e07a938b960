from fractions import Fraction

import pytest

import printed
from krallcremona.cremona import (check_inverse, compose, identity_map, invert, invert_parametric,
                                  jacobian_det, lr_conjugate, proportional, reflect_in_k,
                                  reverse_components, specialize, structural_inverse)
from krallcremona.cremona.maps import DegenerateMapError, FixedMap, specialize_raw
from krallcremona.exactpoly import MultiPoly, VarSet
from krallcremona.paramlift import homogenize, lift, map_varset


def test_lift_one_n1_matches_closed_form(pipe):
    assert list(pipe("one", 1).forward.components) == printed.one_n1()


def test_lift_two_n1_matches_closed_form(pipe):
    assert list(pipe("two", 1).forward.components) == printed.two_n1()


def test_homogenize():
    vs = map_varset("one", 2)
    aff = VarSet(("l0", "l1", "k"))
    p = MultiPoly.var(aff, "l0") * MultiPoly.var(aff, "k") + 1
    q = homogenize(p, 2, vs)
    h, l0, k = (MultiPoly.var(vs, v) for v in ("h", "l0", "k"))
    assert q == l0 * k * h + h * h


@pytest.mark.parametrize("k", [2, 5, Fraction(7, 3)])
def test_generic_inverse_two_n1(pipe, k):
    F = specialize(pipe("two", 1).forward, k)
    G, lam = invert(F)
    assert proportional(compose(G, F).components, identity_map(F.vs.names).components)
    assert lam != 0


def test_structural_inverse_matches_parametric(pipe):
    inv = pipe("one", 2).inverse
    for k in (3, 4):
        G = structural_inverse("one", 2, k)
        assert proportional(G.components, specialize(inv, k).components)


def test_check_inverse_rejects_wrong_map(pipe):
    F = specialize(pipe("one", 2).forward, 3)
    G = structural_inverse("one", 2, 3)
    assert check_inverse(G, F)
    bad = FixedMap((G.components[1], G.components[0], G.components[2]))
    with pytest.raises(ArithmeticError):
        check_inverse(bad, F)


def test_degenerate_specialization(pipe):
    F = specialize_raw(pipe("one", 1).forward, -1)
    assert F.components[0] == F.components[1]
    assert jacobian_det(F) == 0


def test_lr_conjugation_is_involution(pipe):
    m = pipe("two", 1).forward
    c = m.components[0]
    assert lr_conjugate(lr_conjugate(c)) == c
    assert lr_conjugate(c) == c  # H is LR-symmetric


def test_reflection_one_n2(pipe):
    m = pipe("one", 2).forward
    assert proportional(reflect_in_k(m).components, reverse_components(m).components)


def test_proportional():
    vs = VarSet(("a", "b"))
    a, b = MultiPoly.var(vs, "a"), MultiPoly.var(vs, "b")
    assert proportional([a, b], [3 * a, 3 * b])
    assert not proportional([a, b], [3 * a, 2 * b])
