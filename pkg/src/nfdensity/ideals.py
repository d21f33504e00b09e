"""Nonzero integral ideals of the order as Hermite normal form lattices.

An ideal is stored by its row-style HNF in active-basis coordinates: a
square upper triangular matrix with positive pivots and every entry above a
pivot reduced into [0, pivot).  Its pivot product is the index [O : I],
i.e. the ideal norm.

All HNFs here are computed modulo an integer D known to lie in the ideal
(the gcd of generator norms, or of ideal norms), which keeps intermediate
entries below D.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .number_field import AlgebraicInt, BasisMismatchError, NumberFieldOrder


class ZeroIdeal:
    """The zero ideal; deliberately not an HNFIdeal (it has no finite norm)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZeroIdeal()"

    def to_json(self) -> dict:
        return {"zero": True}


ZERO_IDEAL = ZeroIdeal()


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf_mod(rows: Iterable[Sequence[int]], n: int, D: int, *, stop_at_nonunit: bool = False):
    """Row HNF of span(rows) + D*Z^n.

    D must be a positive integer such that D*Z^n lies in span(rows).
    Returns the n x n HNF, or None when ``stop_at_nonunit`` is set and some
    pivot exceeds 1 (the lattice is then a proper sublattice).
    """
    if D <= 0:
        raise ValueError("modulus must be positive")
    pool = []
    for r in rows:
        v = [x % D for x in r]
        if any(v):
            pool.append(v)
    basis: list[list[int]] = []
    for k in range(n):
        # the pivot row for column k starts as D*e_k
        piv = [0] * n
        piv[k] = D
        rest = []
        for v in pool:
            a = v[k]
            if a == 0:
                rest.append(v)
                continue
            b = piv[k]
            g, s, t = _xgcd(a, b)
            # [s t; -b/g a/g] is unimodular and maps (v, piv) to (new piv, leftover)
            bg, ag = b // g, a // g
            new_piv = [(s * x + t * y) for x, y in zip(v, piv)]
            left = [(ag * y - bg * x) for x, y in zip(v, piv)]
            piv = [x % D if j > k else x for j, x in enumerate(new_piv)]
            left = [x % D for x in left]
            if any(left):
                rest.append(left)
        if piv[k] < 0:
            piv = [-x for x in piv]
        if stop_at_nonunit and piv[k] != 1:
            return None
        basis.append(piv)
        pool = rest
    # reduce entries above pivots into [0, pivot); left to right so later columns stay reduced
    for k in range(n):
        pk = basis[k][k]
        for i in range(k):
            q = basis[i][k] // pk
            if q:
                basis[i] = [x - q * y for x, y in zip(basis[i], basis[k])]
    return basis


def _generator_rows(gens: Sequence[AlgebraicInt]) -> list[list[int]]:
    """z * e_t for all generators z and basis elements e_t, in active coordinates."""
    order = gens[0].order
    es = order.basis_elements()
    return [list((z * e).coords) for z in gens if not z.is_zero() for e in es]


@dataclass(frozen=True, eq=False)
class HNFIdeal:
    order: NumberFieldOrder
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.order.n
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValueError("HNF must be n x n")
        for i, r in enumerate(self.rows):
            if r[i] <= 0 or any(r[j] for j in range(i)):
                raise ValueError("matrix is not upper triangular with positive pivots")
            for k in range(i):
                if not 0 <= self.rows[k][i] < r[i]:
                    raise ValueError("entries above pivots are not reduced")

    @property
    def norm(self) -> int:
        out = 1
        for i, r in enumerate(self.rows):
            out *= r[i]
        return out

    def is_unit(self) -> bool:
        return self.norm == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HNFIdeal):
            return NotImplemented
        return self.order.same_basis(other.order) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.order.fingerprint(), self.rows))

    def __contains__(self, a: AlgebraicInt) -> bool:
        return ideal_membership(a, self)

    def is_closed(self) -> bool:
        """Whether the row span is stable under multiplication by every e_i."""
        o = self.order
        for e in o.basis_elements():
            for r in self.rows:
                if not self.contains_coords((o.element(r) * e).coords):
                    return False
        return True

    def contains_coords(self, v: Sequence[int]) -> bool:
        v = list(v)
        n = len(v)
        for k in range(n):
            if v[k]:
                q, rem = divmod(v[k], self.rows[k][k])
                if rem:
                    return False
                row = self.rows[k]
                for j in range(k, n):
                    v[j] -= q * row[j]
        return True

    def to_json(self) -> dict:
        return {"hnf": [list(r) for r in self.rows], "norm": self.norm}

    def __repr__(self) -> str:
        return f"HNFIdeal({[list(r) for r in self.rows]})"


def ideal_from_generators(gens: Sequence[AlgebraicInt], *, verify: bool = True) -> HNFIdeal | ZeroIdeal:
    """The O-ideal generated by ``gens``; ZERO_IDEAL when every generator is 0."""
    if not gens:
        raise ValueError("at least one generator required")
    order = gens[0].order
    for z in gens:
        if not order.same_basis(z.order):
            raise BasisMismatchError("generators live in different bases")
    nonzero = [z for z in gens if not z.is_zero()]
    if not nonzero:
        return ZERO_IDEAL
    D = 0
    for z in nonzero:
        D = gcd(D, z.norm())
    D = abs(D)
    rows = hnf_mod(_generator_rows(nonzero), order.n, D)
    ideal = HNFIdeal(order, tuple(map(tuple, rows)))
    if verify and not ideal.is_closed():
        raise AssertionError("generated module is not an ideal")
    return ideal


def principal_ideal(a: AlgebraicInt) -> HNFIdeal | ZeroIdeal:
    return ideal_from_generators([a])


def unit_ideal(order: NumberFieldOrder) -> HNFIdeal:
    n = order.n
    return HNFIdeal(order, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def ideal_norm(ideal: HNFIdeal) -> int:
    return ideal.norm


def ideal_add(i: HNFIdeal, j: HNFIdeal) -> HNFIdeal:
    if not i.order.same_basis(j.order):
        raise BasisMismatchError("ideals live in different bases")
    D = gcd(i.norm, j.norm)
    rows = hnf_mod(list(i.rows) + list(j.rows), i.order.n, D)
    return HNFIdeal(i.order, tuple(map(tuple, rows)))


def ideal_membership(a: AlgebraicInt, ideal: HNFIdeal) -> bool:
    if not a.order.same_basis(ideal.order):
        raise BasisMismatchError("element and ideal live in different bases")
    return ideal.contains_coords(a.coords)


def is_coprime_tuple(z: Sequence[AlgebraicInt]) -> bool:
    """Whether the entries of z generate the unit ideal."""
    if not z:
        raise ValueError("empty tuple")
    ideal = ideal_from_generators(z, verify=False)
    return isinstance(ideal, HNFIdeal) and ideal.norm == 1


def is_coprime_power_coords(order: NumberFieldOrder, tuples: Sequence[Sequence[int]], D: int) -> bool:
    """Coprimality of elements given by power coordinates, with D in the ideal.

    Fast kernel for box loops; D must be a positive integer contained in the
    ideal, e.g. a common divisor of the generator norms.
    """
    n = order.n
    rows = []
    for a in tuples:
        if any(a):
            for t in range(n):
                rows.append(order.mul_power(a, [int(k == t) for k in range(n)]))
    return hnf_mod(rows, n, D, stop_at_nonunit=True) is not None
