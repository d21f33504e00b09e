import itertools
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nfdensity.intmat import det, matmul
from nfdensity.number_field import (BasisMismatchError, IntegralBasis, IrreducibilityWarning,
                                    NumberFieldOrder, box_contains, elem_mul, elem_norm)

from .conftest import make_order


def test_order_examples(gauss, rationals, golden):
    assert gauss.n == 2 and gauss.mult_table[1][1] == (-1, 0)
    assert rationals.n == 1
    assert golden.mult_table[1][1] == (1, 1)


def test_order_rejects():
    with pytest.raises(ValueError):
        NumberFieldOrder("2*x^2 + 1")
    with pytest.raises(ValueError):
        NumberFieldOrder("5")


def test_reducible_poly_warns():
    with pytest.warns(IrreducibilityWarning):
        NumberFieldOrder("x^2 - 1")


def test_mult_examples(gauss, golden):
    a, b = gauss.element([1, 1]), gauss.element([1, -1])
    assert (a * b).coords == (2, 0)
    t = golden.theta()
    assert elem_mul(t, t).coords == (1, 1)


def test_norm_examples(gauss):
    assert elem_norm(gauss.element([3, 4])) == 25
    assert gauss.one().norm() == 1
    assert gauss.zero().norm() == 0


def test_theta_rational():
    assert make_order("x - 3").theta().coords == (3,)


FIELDS = ["x^2 + 1", "x^2 - x - 1", "x^3 - x - 1", "x^3 - 2", "x^4 + 1"]
ORDERS = {f: make_order(f) for f in FIELDS}


def elements(order, lo=-30, hi=30):
    return st.lists(st.integers(lo, hi), min_size=order.n, max_size=order.n).map(order.element)


@st.composite
def field_and_elems(draw, k=3):
    order = ORDERS[draw(st.sampled_from(FIELDS))]
    return order, [draw(elements(order)) for _ in range(k)]


@settings(max_examples=100, deadline=None)
@given(field_and_elems())
def test_ring_axioms(data):
    _, (a, b, c) = data
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a * a.order.one() == a
    assert (a - b) + b == a


@settings(max_examples=100, deadline=None)
@given(field_and_elems(2))
def test_norm_multiplicative_and_matches_form(data):
    order, (a, b) = data
    assert (a * b).norm() == a.norm() * b.norm()
    assert order.eval_norm_form(a.coords) == a.norm()


@st.composite
def unimodular(draw, n):
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, 6))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i == j:
            u[i] = [-x for x in u[i]]
        else:
            k = draw(st.integers(-3, 3))
            u[i] = [x + k * y for x, y in zip(u[i], u[j])]
    return u


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_basis_change_round_trip(data):
    order = ORDERS[data.draw(st.sampled_from(FIELDS))]
    rows = data.draw(unimodular(order.n))
    assert abs(det(rows)) == 1
    other = order.with_basis(rows)
    a, b = data.draw(elements(order)), data.draw(elements(order))
    a2, b2 = a.in_basis(other), b.in_basis(other)
    assert a2.in_basis(order) == a
    # ring structure is basis independent
    assert (a2 * b2).in_basis(order) == a * b
    assert a2.norm() == a.norm()
    assert other.eval_norm_form(a2.coords) == a.norm()


def test_basis_change_examples(gauss, gauss_rotated):
    assert gauss.with_basis([[1, 0], [0, 1]]).basis.is_identity()
    i = gauss.theta()
    assert i.in_basis(gauss_rotated).coords == (1, 1)
    with pytest.raises(ValueError):
        gauss.with_basis([[2, 0], [0, 1]])
    with pytest.raises(BasisMismatchError):
        i + i.in_basis(gauss_rotated)


def test_from_transform(gauss):
    # U maps power coordinates to E'-coordinates; i = (0, 1) -> (1, 1)
    basis = IntegralBasis.from_transform([[1, 0], [1, 1]])
    assert basis.to_power == ((1, 0), (-1, 1))
    assert gauss.with_basis(basis).from_power_coords([0, 1]).coords == (1, 1)


def test_box_contains(gauss):
    for B in (1, 3, 10):
        assert box_contains(gauss.element([-B, 0]), B)
        assert not box_contains(gauss.element([B, 0]), B)
        assert box_contains(gauss.zero(), B)


@pytest.mark.parametrize("poly", FIELDS[:3])
@pytest.mark.parametrize("B", [1, 2, 3])
def test_box_size_and_norm_bound(poly, B):
    order = ORDERS[poly]
    for rows in ([[int(i == j) for j in range(order.n)] for i in range(order.n)],
                 [[1 if j >= i else 0 for j in range(order.n)] for i in range(order.n)]):
        o = order.with_basis(rows)
        pts = list(o.enumerate_box(B))
        assert len(pts) == (2 * B) ** o.n == o.box_size(B)
        assert all(box_contains(a, B) for a in pts)
        C = o.norm_constant
        assert all(abs(a.norm()) <= C * B**o.n for a in pts)


def test_enumeration_order(gauss):
    pts = [a.coords for a in gauss.enumerate_box(1)]
    assert pts == [(-1, -1), (-1, 0), (0, -1), (0, 0)]
