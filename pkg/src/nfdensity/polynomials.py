"""Univariate polynomials over Z and over prime fields F_p.

Coefficients are stored in ascending degree order.  Factorization over F_p
runs squarefree decomposition, distinct-degree splitting and then seeded
Cantor-Zassenhaus equal-degree splitting, so results are reproducible.
"""

from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .intmat import det
from .primes import is_prime, primes_upto

DEFAULT_SEED = 0x5EED


class PolynomialParseError(ValueError):
    pass


def _trim(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(x) for x in self.coeffs))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        return parse_polynomial(text)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        return poly_mul_int(self, other)

    __rmul__ = __mul__

    def divmod_monic(self, d: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Division by a monic divisor, exact over Z."""
        if not d.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = d.degree
        if len(rem) - 1 < dd:
            return IntPolynomial(), self
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c:
                quot[k - dd] = c
                for i, dc in enumerate(d.coeffs):
                    rem[k - dd + i] -= c * dc
        return IntPolynomial(quot), IntPolynomial(rem[:dd])

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def mod(self, p: int) -> "ModPPolynomial":
        return ModPPolynomial(p, self.coeffs)

    def __str__(self) -> str:
        return format_polynomial(self.coeffs)


def poly_mul_int(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    if a.is_zero() or b.is_zero():
        return IntPolynomial()
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
    return IntPolynomial(out)


def format_polynomial(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    return " ".join(terms) if terms else "0"


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+)\s*(?P<star>\*)?\s*)?
        (?P<var>x(?:\s*\^\s*(?P<exp>\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_polynomial(text: str) -> IntPolynomial:
    """Parse integer-coefficient text such as ``x^3 - x - 1`` or ``2*x^2+3x``."""
    s = text.strip()
    if not s:
        raise PolynomialParseError("empty polynomial text")
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if mt is None or mt.end() == pos:
            raise PolynomialParseError(f"cannot parse {text!r} at offset {pos}")
        sign, coef, star, var = mt.group("sign"), mt.group("coef"), mt.group("star"), mt.group("var")
        if coef is None and var is None:
            raise PolynomialParseError(f"cannot parse {text!r} at offset {pos}")
        if sign is None and not first:
            raise PolynomialParseError(f"missing operator in {text!r} at offset {pos}")
        if star and var is None:
            raise PolynomialParseError(f"dangling '*' in {text!r}")
        c = int(coef) if coef is not None else 1
        if sign == "-":
            c = -c
        k = 0 if var is None else int(mt.group("exp") or 1)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = mt.end()
        first = False
    top = max(coeffs)
    return IntPolynomial(coeffs.get(k, 0) for k in range(top + 1))


def sylvester_matrix(f: IntPolynomial, g: IntPolynomial) -> list[list[int]]:
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - i - len(fc)))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - i - len(gc)))
    return rows


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    if f.is_zero() or g.is_zero():
        return 0
    return det(sylvester_matrix(f, g))


def discriminant(f: IntPolynomial) -> int:
    if not f.is_monic() or f.degree < 1:
        raise ValueError(f"discriminant needs a monic polynomial of degree >= 1, got {f}")
    n = f.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative())


# ---------------------------------------------------------------------------
# F_p[x] kernels on plain coefficient lists (ascending, trimmed)


def _mtrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _madd(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = a[:]
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % p
    return _mtrim(out)


def _msub(a: list[int], b: list[int], p: int) -> list[int]:
    out = a[:] + [0] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return _mtrim(out)


def _mmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _mtrim([c % p for c in out])


def _mdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    rem = a[:]
    if len(rem) - 1 < db:
        return [], rem
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] * inv % p
        if c:
            quot[k - db] = c
            for i, bc in enumerate(b):
                rem[k - db + i] = (rem[k - db + i] - c * bc) % p
    return _mtrim(quot), _mtrim(rem[:db])


def _mmod(a: list[int], b: list[int], p: int) -> list[int]:
    return _mdivmod(a, b, p)[1]


def _mmonic(a: list[int], p: int) -> list[int]:
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _mgcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _mmod(a, b, p)
    return _mmonic(a, p)


def _mpowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _mmod(base, mod, p)
    while e:
        if e & 1:
            result = _mmod(_mmul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = _mmod(_mmul(base, base, p), mod, p)
    return result


def _mderiv(a: list[int], p: int) -> list[int]:
    return _mtrim([k * c % p for k, c in enumerate(a)][1:])


@dataclass(frozen=True)
class ModPPolynomial:
    p: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        object.__setattr__(self, "coeffs", _trim(int(c) % self.p for c in self.coeffs))

    @classmethod
    def _raw(cls, p: int, coeffs: Iterable[int]) -> "ModPPolynomial":
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        return obj

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _check(self, other: "ModPPolynomial") -> None:
        if other.p != self.p:
            raise ValueError("moduli differ")

    def __add__(self, other: "ModPPolynomial") -> "ModPPolynomial":
        self._check(other)
        return ModPPolynomial._raw(self.p, _madd(list(self.coeffs), list(other.coeffs), self.p))

    def __sub__(self, other: "ModPPolynomial") -> "ModPPolynomial":
        self._check(other)
        return ModPPolynomial._raw(self.p, _msub(list(self.coeffs), list(other.coeffs), self.p))

    def __mul__(self, other: "ModPPolynomial") -> "ModPPolynomial":
        self._check(other)
        return ModPPolynomial._raw(self.p, _mmul(list(self.coeffs), list(other.coeffs), self.p))

    def __pow__(self, e: int) -> "ModPPolynomial":
        out = [1]
        for _ in range(e):
            out = _mmul(out, list(self.coeffs), self.p)
        return ModPPolynomial._raw(self.p, out)

    def __divmod__(self, other: "ModPPolynomial"):
        self._check(other)
        q, r = _mdivmod(list(self.coeffs), list(other.coeffs), self.p)
        return ModPPolynomial._raw(self.p, q), ModPPolynomial._raw(self.p, r)

    def gcd(self, other: "ModPPolynomial") -> "ModPPolynomial":
        self._check(other)
        return ModPPolynomial._raw(self.p, _mgcd(list(self.coeffs), list(other.coeffs), self.p))

    def monic(self) -> "ModPPolynomial":
        return ModPPolynomial._raw(self.p, _mmonic(list(self.coeffs), self.p))

    def lift(self) -> IntPolynomial:
        """Lift to Z[x] with coefficients in [0, p)."""
        return IntPolynomial(self.coeffs)

    def sort_key(self) -> tuple:
        return (self.degree, self.coeffs)

    def __str__(self) -> str:
        return format_polynomial(self.coeffs)


@dataclass(frozen=True)
class FactorizationModP:
    p: int
    factors: tuple[tuple[ModPPolynomial, int], ...]
    unit: int = 1

    def product(self) -> ModPPolynomial:
        acc = [self.unit % self.p]
        for g, e in self.factors:
            for _ in range(e):
                acc = _mmul(acc, list(g.coeffs), self.p)
        return ModPPolynomial._raw(self.p, acc)

    def degrees(self) -> list[tuple[int, int]]:
        """(degree, multiplicity) pairs in canonical order."""
        return [(g.degree, e) for g, e in self.factors]


def _pth_root(a: list[int], p: int) -> list[int]:
    # a(x) = b(x)^p = b(x^p) over F_p, since c^p = c
    return _mtrim([a[k] for k in range(0, len(a), p)])


def _squarefree(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Squarefree decomposition of monic f: pairwise coprime (g, mult) pieces."""
    out: list[tuple[list[int], int]] = []
    df = _mderiv(f, p)
    if not df:
        for g, k in _squarefree(_pth_root(f, p), p):
            out.append((g, k * p))
        return out
    c = _mgcd(f, df, p)
    w = _mdivmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = _mgcd(w, c, p)
        z = _mdivmod(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = _mdivmod(c, y, p)[0]
    if len(c) > 1:
        for g, k in _squarefree(_pth_root(c, p), p):
            out.append((g, k * p))
    return out


def _distinct_degree(f: list[int], p: int) -> list[tuple[list[int], int]]:
    out = []
    x = [0, 1]
    h = x
    i = 1
    fs = f
    while len(fs) - 1 >= 2 * i:
        h = _mpowmod(h, p, fs, p)
        g = _mgcd(fs, _msub(h, x, p), p)
        if len(g) > 1:
            out.append((g, i))
            fs = _mdivmod(fs, g, p)[0]
            h = _mmod(h, fs, p)
        i += 1
    if len(fs) > 1:
        out.append((fs, len(fs) - 1))
    return out


def _equal_degree(f: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _mtrim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # absolute trace to F_2: a + a^2 + ... + a^(2^(d-1))
            t = a
            s = a
            for _ in range(d - 1):
                t = _mmod(_mmul(t, t, p), f, p)
                s = _madd(s, t, p)
            b = s
        else:
            b = _msub(_mpowmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = _mgcd(f, b, p)
        if 1 < len(g) < len(f):
            h = _mdivmod(f, g, p)[0]
            return _equal_degree(g, d, p, rng) + _equal_degree(h, d, p, rng)


def factor_mod_p(f: IntPolynomial | ModPPolynomial, p: int, seed: int = DEFAULT_SEED) -> FactorizationModP:
    """Complete factorization of f over F_p into monic irreducibles."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    coeffs = _mtrim([int(c) % p for c in f.coeffs])
    if not coeffs:
        raise ValueError(f"polynomial vanishes modulo {p}")
    unit = coeffs[-1]
    fm = _mmonic(coeffs, p)
    rng = random.Random(seed)
    factors: list[tuple[ModPPolynomial, int]] = []
    for sq, mult in _squarefree(fm, p):
        for block, d in _distinct_degree(sq, p):
            for g in _equal_degree(block, d, p, rng):
                factors.append((ModPPolynomial._raw(p, g), mult))
    factors.sort(key=lambda ge: ge[0].sort_key())
    return FactorizationModP(p, tuple(factors), unit)


def is_squarefree_mod_p(f: IntPolynomial, p: int) -> bool:
    fp = _mtrim([c % p for c in f.coeffs])
    return len(_mgcd(fp, _mderiv(fp, p), p)) == 1


class Evidence(enum.Enum):
    CERTIFIED = "certified"
    UNCERTIFIED = "uncertified"


@dataclass(frozen=True)
class IrreducibilityReport:
    status: Evidence
    witness: int | None = None
    rational_roots: tuple[int, ...] = ()
    primes_tried: tuple[int, ...] = field(default=(), repr=False)

    @property
    def certified(self) -> bool:
        return self.status is Evidence.CERTIFIED


def integer_roots(f: IntPolynomial) -> tuple[int, ...]:
    """Integer roots of a monic polynomial (all rational roots are integers)."""
    roots = set()
    coeffs = list(f.coeffs)
    while coeffs and coeffs[0] == 0:
        roots.add(0)
        coeffs = coeffs[1:]
    if not coeffs:
        return tuple(sorted(roots))
    g = IntPolynomial(coeffs)
    c0 = abs(g.coeffs[0])
    d = 1
    while d * d <= c0:
        if c0 % d == 0:
            for cand in (d, -d, c0 // d, -(c0 // d)):
                if g(cand) == 0:
                    roots.add(cand)
        d += 1
    return tuple(sorted(roots))


def irreducibility_evidence(f: IntPolynomial, prime_budget: int = 100) -> IrreducibilityReport:
    """Certify irreducibility over Z when a good prime makes f irreducible mod p.

    Only returns CERTIFIED with a witness prime; otherwise reports the
    integer roots so reducible inputs are visible to the caller.
    """
    if not f.is_monic() or f.degree < 1:
        raise ValueError("irreducibility evidence needs a monic polynomial of degree >= 1")
    if f.degree == 1:
        return IrreducibilityReport(Evidence.CERTIFIED, witness=None)
    disc = discriminant(f)
    tried = []
    for p in primes_upto(prime_budget):
        if disc % p == 0:
            continue
        tried.append(p)
        fac = factor_mod_p(f, p)
        if len(fac.factors) == 1 and fac.factors[0][1] == 1:
            return IrreducibilityReport(Evidence.CERTIFIED, witness=p, primes_tried=tuple(tried))
    return IrreducibilityReport(Evidence.UNCERTIFIED, rational_roots=integer_roots(f),
                                primes_tried=tuple(tried))
