import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from nfdensity.ideals import (ZERO_IDEAL, HNFIdeal, hnf_mod, ideal_add, ideal_from_generators,
                              ideal_membership, ideal_norm, is_coprime_tuple, principal_ideal,
                              unit_ideal)
from nfdensity.number_field import BasisMismatchError

from .conftest import make_order

GAUSS = make_order("x^2 + 1")
ORDERS = [GAUSS, make_order("x^2 - x - 1"), make_order("x^3 - x - 1"), make_order("x^3 - 2")]


def elements(order, lo=-25, hi=25):
    return st.lists(st.integers(lo, hi), min_size=order.n, max_size=order.n).map(order.element)


def nonzero(order, lo=-25, hi=25):
    return elements(order, lo, hi).filter(lambda a: not a.is_zero())


def test_generator_examples(gauss):
    two, a = gauss.from_int(2), gauss.element([1, 1])
    I = ideal_from_generators([two, a])
    assert I.rows == ((1, 1), (0, 2)) and I.norm == 2
    assert I == principal_ideal(a)
    assert ideal_from_generators([gauss.one()]).rows == ((1, 0), (0, 1))
    assert ideal_from_generators([gauss.zero(), gauss.zero()]) is ZERO_IDEAL
    with pytest.raises(ValueError):
        ideal_from_generators([])


def test_norm_examples(gauss):
    assert ideal_norm(principal_ideal(gauss.from_int(2))) == 4
    assert ideal_norm(unit_ideal(gauss)) == 1
    assert ideal_norm(principal_ideal(gauss.element([1, 1]))) == 2


def test_add_examples(gauss):
    two, three, a = (principal_ideal(gauss.from_int(k)) for k in (2, 3, 1))
    pi = principal_ideal(gauss.element([1, 1]))
    assert ideal_add(pi, unit_ideal(gauss)) == unit_ideal(gauss)
    assert ideal_add(two, three).is_unit()
    assert ideal_add(pi, two) == pi


def test_coprime_examples(gauss):
    assert not is_coprime_tuple([gauss.element([1, 1]), gauss.element([1, -1])])
    assert is_coprime_tuple([gauss.one(), gauss.element([7, 3])])
    assert not is_coprime_tuple([gauss.zero(), gauss.zero()])
    assert is_coprime_tuple([gauss.element([2, 1]), gauss.element([2, -1])])  # 5 = N(2+i) but (2+i)+(2-i) = O


def test_membership_examples(gauss):
    pi = principal_ideal(gauss.element([1, 1]))
    assert ideal_membership(gauss.from_int(2), pi)
    assert gauss.one() not in pi
    assert gauss.zero() in pi


def test_invalid_hnf(gauss):
    with pytest.raises(ValueError):
        HNFIdeal(gauss, ((1, 2), (0, 2)))
    with pytest.raises(ValueError):
        HNFIdeal(gauss, ((0, 1), (0, 2)))


def test_basis_mismatch(gauss, gauss_rotated):
    with pytest.raises(BasisMismatchError):
        ideal_from_generators([gauss.one(), gauss_rotated.one()])


def test_hnf_mod_plain():
    # lattice spanned by (4, 6), (0, 2) together with 8 Z^2
    assert hnf_mod([[4, 6], [0, 2]], 2, 8) == [[4, 0], [0, 2]]
    assert hnf_mod([], 2, 3) == [[3, 0], [0, 3]]


UNITS = [GAUSS.one(), -GAUSS.one(), GAUSS.theta(), -GAUSS.theta()]


@settings(max_examples=80, deadline=None)
@given(st.lists(elements(GAUSS), min_size=1, max_size=4), st.data())
def test_canonical_under_permutation_and_units(gens, data):
    assume(any(not g.is_zero() for g in gens))
    I = ideal_from_generators(gens)
    perm = data.draw(st.permutations(gens))
    units = [data.draw(st.sampled_from(UNITS)) for _ in gens]
    J = ideal_from_generators([u * g for u, g in zip(units, perm)])
    assert I == J


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_norm_multiplicative(data):
    order = data.draw(st.sampled_from(ORDERS))
    a, b = data.draw(nonzero(order)), data.draw(nonzero(order))
    assert ideal_norm(principal_ideal(a * b)) == abs(a.norm()) * abs(b.norm())
    assert ideal_norm(principal_ideal(a)) == abs(a.norm())


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_absorption_and_monotonicity(data):
    order = data.draw(st.sampled_from(ORDERS))
    I = principal_ideal(data.draw(nonzero(order)))
    J = ideal_from_generators([data.draw(nonzero(order)), data.draw(nonzero(order))])
    assert ideal_add(I, I) == I
    S = ideal_add(I, J)
    assert S.norm <= min(I.norm, J.norm)
    assert I.norm % S.norm == 0 and J.norm % S.norm == 0
    assert S.is_closed()
    assert ideal_add(I, unit_ideal(order)) == unit_ideal(order)


def _gauss_divides(x, y):
    """x | y in Z[i], by dividing through the conjugate."""
    a, b = x.coords
    c, d = y.coords
    n = a * a + b * b
    re, im = c * a + d * b, d * a - c * b
    return re % n == 0 and im % n == 0


@settings(max_examples=150, deadline=None)
@given(nonzero(GAUSS), elements(GAUSS, -60, 60))
def test_membership_matches_division(a, b):
    assert ideal_membership(b, principal_ideal(a)) == _gauss_divides(a, b)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_generated_ideal_is_closed_and_contains_generators(data):
    order = data.draw(st.sampled_from(ORDERS))
    gens = data.draw(st.lists(nonzero(order), min_size=1, max_size=3))
    I = ideal_from_generators(gens)
    assert I.is_closed()
    assert all(g in I for g in gens)
    assert all((g * e) in I for g in gens for e in order.basis_elements())


def test_basis_change_preserves_norm(gauss, gauss_rotated):
    for c in itertools.product(range(-3, 4), repeat=2):
        a = gauss.element(c)
        if a.is_zero():
            continue
        assert principal_ideal(a).norm == principal_ideal(a.in_basis(gauss_rotated)).norm
