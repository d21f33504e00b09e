"""The monogenic order Z[theta] of K = Q[x]/(f), elements and Z-bases.

Element coordinates are always exact Python integers in the *active* basis
E of the order.  The multiplication table lives in the power basis
1, theta, ..., theta^(n-1); a basis change only alters coordinate I/O.
"""

from __future__ import annotations

import hashlib
import itertools
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .intmat import det, identity, inverse_unimodular, vecmat
from .polynomials import IntPolynomial, discriminant, irreducibility_evidence, parse_polynomial


# fields whose power basis is the full ring of integers
BUNDLED_FIELDS = {
    "Q": "x",
    "Q(i)": "x^2 + 1",
    "Q(sqrt2)": "x^2 - 2",
    "Q(sqrt5)": "x^2 - x - 1",
    "Q(sqrt-2)": "x^2 + 2",
    "Q(zeta3)": "x^2 + x + 1",
    "cubic -23": "x^3 - x - 1",
    "Q(2^(1/3))": "x^3 - 2",
    "Q(zeta8)": "x^4 + 1",
}


class BasisMismatchError(ValueError):
    pass


class IrreducibilityWarning(UserWarning):
    pass


@dataclass(frozen=True)
class IntegralBasis:
    """A Z-basis E of the order.

    ``to_power`` has the basis elements e_i as rows in power-basis
    coordinates; ``transform`` is its inverse U, mapping power coordinates
    (row vector) to E-coordinates: ``e_coords = power_coords @ U``.
    """

    to_power: tuple[tuple[int, ...], ...]
    transform: tuple[tuple[int, ...], ...]

    @classmethod
    def identity(cls, n: int) -> "IntegralBasis":
        eye = tuple(map(tuple, identity(n)))
        return cls(eye, eye)

    @classmethod
    def from_elements(cls, rows: Sequence[Sequence[int]]) -> "IntegralBasis":
        """Basis from its elements written in power-basis coordinates."""
        rows = [list(map(int, r)) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("basis matrix must be square")
        inv = inverse_unimodular(rows)
        return cls(tuple(map(tuple, rows)), tuple(map(tuple, inv)))

    @classmethod
    def from_transform(cls, u: Sequence[Sequence[int]]) -> "IntegralBasis":
        """Basis from U (power coordinates -> E-coordinates)."""
        basis = cls.from_elements(u)
        return cls(basis.transform, basis.to_power)

    @property
    def n(self) -> int:
        return len(self.to_power)

    def is_identity(self) -> bool:
        return self.to_power == tuple(map(tuple, identity(self.n)))

    def fingerprint(self) -> str:
        return ";".join(",".join(map(str, r)) for r in self.to_power)


class NumberFieldOrder:
    """Z[theta] for a monic defining polynomial, with an active Z-basis."""

    def __init__(self, f: IntPolynomial | str, basis: IntegralBasis | None = None,
                 *, check_irreducible: bool = True):
        if isinstance(f, str):
            f = parse_polynomial(f)
        if f.degree < 1:
            raise ValueError("defining polynomial must have degree >= 1")
        if not f.is_monic():
            raise ValueError(f"defining polynomial must be monic: {f}")
        self.poly = f
        self.n = f.degree
        self.mult_table = _build_mult_table(f)
        self.disc = discriminant(f)
        self.basis = basis if basis is not None else IntegralBasis.identity(self.n)
        if self.basis.n != self.n:
            raise ValueError("basis dimension does not match field degree")
        if check_irreducible and self.n > 1:
            ev = irreducibility_evidence(f)
            self.irreducibility = ev
            if not ev.certified:
                warnings.warn(
                    f"irreducibility of {f} not certified by any good prime "
                    f"(integer roots: {list(ev.rational_roots)})",
                    IrreducibilityWarning, stacklevel=2)
        else:
            self.irreducibility = None

    def __repr__(self) -> str:
        return f"NumberFieldOrder({str(self.poly)!r}, basis={self.basis.fingerprint()!r})"

    # --- basis handling -------------------------------------------------

    def with_basis(self, basis: IntegralBasis | Sequence[Sequence[int]]) -> "NumberFieldOrder":
        if not isinstance(basis, IntegralBasis):
            basis = IntegralBasis.from_elements(basis)
        if basis.n != self.n:
            raise ValueError("basis dimension does not match field degree")
        other = object.__new__(NumberFieldOrder)
        other.poly = self.poly
        other.n = self.n
        other.mult_table = self.mult_table
        other.disc = self.disc
        other.irreducibility = self.irreducibility
        other.basis = basis
        return other

    def same_basis(self, other: "NumberFieldOrder") -> bool:
        return self is other or (self.poly == other.poly and self.basis == other.basis)

    def same_field(self, other: "NumberFieldOrder") -> bool:
        return self.poly == other.poly

    def fingerprint(self) -> str:
        return f"{self.poly}|{self.basis.fingerprint()}"

    @property
    def poly_key(self) -> str:
        return hashlib.sha1(str(self.poly).encode()).hexdigest()[:16]

    def to_power(self, coords: Sequence[int]) -> list[int]:
        if self.basis.is_identity():
            return list(coords)
        return vecmat(coords, self.basis.to_power)

    def from_power(self, coords: Sequence[int]) -> list[int]:
        if self.basis.is_identity():
            return list(coords)
        return vecmat(coords, self.basis.transform)

    # --- elements -------------------------------------------------------

    def element(self, coords: Sequence[int]) -> "AlgebraicInt":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(coords)}")
        return AlgebraicInt(self, coords)

    def from_power_coords(self, coords: Sequence[int]) -> "AlgebraicInt":
        return self.element(self.from_power(coords))

    def from_int(self, k: int) -> "AlgebraicInt":
        return self.from_power_coords([k] + [0] * (self.n - 1))

    def one(self) -> "AlgebraicInt":
        return self.from_int(1)

    def zero(self) -> "AlgebraicInt":
        return self.element([0] * self.n)

    def theta(self) -> "AlgebraicInt":
        if self.n == 1:
            return self.from_int(-self.poly[0])
        return self.from_power_coords([int(i == 1) for i in range(self.n)])

    def eval_poly(self, g: IntPolynomial) -> "AlgebraicInt":
        """g(theta) as an element."""
        return self.from_power_coords(self.reduce_power(g.coeffs))

    def basis_elements(self) -> list["AlgebraicInt"]:
        return [self.element([int(i == j) for j in range(self.n)]) for i in range(self.n)]

    def reduce_power(self, coeffs: Sequence[int]) -> list[int]:
        """Reduce sum c_k x^k modulo f to power coordinates."""
        _, r = IntPolynomial(coeffs).divmod_monic(self.poly)
        return [r[k] for k in range(self.n)]

    # --- arithmetic kernels in power coordinates -------------------------

    def mul_power(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        n = self.n
        out = [0] * n
        table = self.mult_table
        for i in range(n):
            ai = a[i]
            if not ai:
                continue
            row = table[i]
            for j in range(n):
                c = ai * b[j]
                if c:
                    t = row[j]
                    for k in range(n):
                        if t[k]:
                            out[k] += c * t[k]
        return out

    def mult_matrix_power(self, a: Sequence[int]) -> list[list[int]]:
        """Rows a * theta^t in power coordinates (multiplication-by-a map)."""
        n = self.n
        return [self.mul_power(a, [int(k == t) for k in range(n)]) for t in range(n)]

    def norm_power(self, a: Sequence[int]) -> int:
        return det(self.mult_matrix_power(a))

    # --- norm form in the active basis -----------------------------------

    @cached_property
    def norm_form(self) -> dict[tuple[int, ...], int]:
        """N(sum x_i e_i) as {exponent tuple: coefficient}, homogeneous of degree n."""
        n = self.n
        m = self.basis.to_power
        table = self.mult_table
        # entry (t, k) of the multiplication matrix as a linear form in x
        lin = [[{} for _ in range(n)] for _ in range(n)]
        for i in range(n):
            mono = tuple(int(v == i) for v in range(n))
            for j in range(n):
                if not m[i][j]:
                    continue
                for t in range(n):
                    for k, c in enumerate(table[j][t]):
                        if c:
                            d = lin[t][k]
                            d[mono] = d.get(mono, 0) + m[i][j] * c
        return _poly_det(lin, n)

    @cached_property
    def norm_constant(self) -> int:
        """l1 mass C of the norm form; |N(a)| <= C * B^n on the box O[B, E]."""
        return sum(abs(c) for c in self.norm_form.values())

    def eval_norm_form(self, coords: Sequence[int]) -> int:
        total = 0
        for exps, c in self.norm_form.items():
            term = c
            for x, e in zip(coords, exps):
                if e:
                    term *= x**e
            total += term
        return total

    # --- boxes ----------------------------------------------------------

    def box_size(self, B: int) -> int:
        return (2 * B) ** self.n

    def enumerate_box(self, B: int) -> Iterator["AlgebraicInt"]:
        """Odometer over O[B, E], last coordinate fastest."""
        for coords in itertools.product(range(-B, B), repeat=self.n):
            yield AlgebraicInt(self, coords)


def _build_mult_table(f: IntPolynomial) -> tuple:
    n = f.degree
    # powers[k] = x^k mod f for k < 2n - 1, via x^n = -sum f_k x^k
    powers = []
    cur = [int(i == 0) for i in range(n)]
    for _k in range(2 * n - 1):
        powers.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * f[i] for i, c in enumerate(cur)]
    for k, row in enumerate(powers):
        _, r = IntPolynomial([0] * k + [1]).divmod_monic(f)
        if tuple(r[i] for i in range(n)) != row:
            raise AssertionError(f"multiplication table row {k} inconsistent")
    return tuple(tuple(powers[i + j] for j in range(n)) for i in range(n))


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _poly_det(lin: list[list[dict]], n: int) -> dict:
    # Laplace expansion along rows, memoized on the set of used columns
    memo: dict[int, dict] = {}
    const_one = {tuple([0] * n): 1}

    def minor(row: int, used: int) -> dict:
        if row == n:
            return const_one
        if used in memo:
            return memo[used]
        acc: dict = {}
        sign = 1
        for col in range(n):
            if used >> col & 1:
                continue
            entry = lin[row][col]
            if entry:
                sub = minor(row + 1, used | (1 << col))
                for e, c in _poly_mul(entry, sub).items():
                    acc[e] = acc.get(e, 0) + sign * c
            sign = -sign
        memo[used] = {e: c for e, c in acc.items() if c}
        return memo[used]

    return minor(0, 0)


@dataclass(frozen=True, eq=False)
class AlgebraicInt:
    order: NumberFieldOrder
    coords: tuple[int, ...]

    def _same(self, other: "AlgebraicInt") -> None:
        if not self.order.same_basis(other.order):
            raise BasisMismatchError("elements live in different orders or bases")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraicInt):
            return NotImplemented
        return self.order.same_basis(other.order) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.order.fingerprint(), self.coords))

    def __add__(self, other: "AlgebraicInt") -> "AlgebraicInt":
        self._same(other)
        return AlgebraicInt(self.order, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgebraicInt") -> "AlgebraicInt":
        self._same(other)
        return AlgebraicInt(self.order, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "AlgebraicInt":
        return AlgebraicInt(self.order, tuple(-x for x in self.coords))

    def __mul__(self, other: "AlgebraicInt | int") -> "AlgebraicInt":
        if isinstance(other, int):
            return AlgebraicInt(self.order, tuple(x * other for x in self.coords))
        self._same(other)
        o = self.order
        prod = o.mul_power(o.to_power(self.coords), o.to_power(other.coords))
        return AlgebraicInt(o, tuple(o.from_power(prod)))

    __rmul__ = __mul__

    @property
    def power_coords(self) -> list[int]:
        return self.order.to_power(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def norm(self) -> int:
        return self.order.norm_power(self.power_coords)

    def in_basis(self, order: NumberFieldOrder) -> "AlgebraicInt":
        """The same ring element expressed in another basis of the same field."""
        if not self.order.same_field(order):
            raise BasisMismatchError("different fields")
        return order.from_power_coords(self.power_coords)

    def __repr__(self) -> str:
        return f"AlgebraicInt({list(self.coords)})"


def elem_add(a: AlgebraicInt, b: AlgebraicInt) -> AlgebraicInt:
    return a + b


def elem_sub(a: AlgebraicInt, b: AlgebraicInt) -> AlgebraicInt:
    return a - b


def elem_mul(a: AlgebraicInt, b: AlgebraicInt) -> AlgebraicInt:
    return a * b


def elem_norm(a: AlgebraicInt) -> int:
    return a.norm()


def box_contains(a: AlgebraicInt, B: int) -> bool:
    """Whether every active-basis coordinate lies in [-B, B)."""
    return all(-B <= c < B for c in a.coords)
