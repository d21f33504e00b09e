"""Truncated Euler product for the Dedekind zeta function at integers m >= 2.

    zeta_K(m) ~ prod_{p <= P} prod_j (1 - p^(-d_j m))^(-1)

The neglected tail is bounded using lambda_p <= n and d_j >= 1:

    log(zeta_K(m) / value) <= n * sum_{k > P} k^(-m) <= n * P^(1-m) / (m-1)

so the absolute error is at most value * (exp(n P^(1-m)/(m-1)) - 1).
Rounding in the decimal accumulator is bounded separately and added.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_CEILING, Decimal, localcontext

from .number_field import NumberFieldOrder
from .primes import primes_upto
from .splitting import SplittingCache, assert_maximal, get_cache

PRECISION = 40


class ZetaPoleError(ValueError):
    pass


@dataclass(frozen=True)
class ZetaEstimate:
    value: Decimal
    tail_bound: Decimal
    P: int
    m: int
    degree: int

    def to_json(self) -> dict:
        return {"zeta": str(self.value), "tail_bound": str(self.tail_bound), "P": self.P, "m": self.m}

    @property
    def interval(self) -> tuple[Decimal, Decimal]:
        return self.value - self.tail_bound, self.value + self.tail_bound


def euler_factor(p: int, degrees: tuple[int, ...], m: int) -> tuple[int, int]:
    """prod_j (1 - p^(-d_j m))^(-1) as an exact fraction (num, den)."""
    num = den = 1
    for d in degrees:
        q = p ** (d * m)
        num *= q
        den *= q - 1
    return num, den


def zeta_K(order: NumberFieldOrder, m: int, P: int, cache: SplittingCache | None = None) -> ZetaEstimate:
    if m <= 1:
        raise ZetaPoleError(
            f"zeta_K(m) needs m >= 2; m = {m} diverges (zeta_K has a pole at 1)")
    if P < 2:
        raise ValueError("prime bound P must be at least 2")
    assert_maximal(order)
    cache = cache or get_cache()
    primes = primes_upto(P)
    n = order.n
    with localcontext() as ctx:
        ctx.prec = PRECISION
        value = Decimal(1)
        ops = 0
        for p in primes:
            ed = cache.splitting_type(order, p)
            num, den = euler_factor(p, tuple(d for _, d in ed), m)
            value *= Decimal(num) / Decimal(den)
            ops += 4  # two conversions, one division, one product
        cache.flush(order)
        # each correctly rounded op has relative error <= 10^(1-prec)/2
        eps = Decimal(10) ** (1 - PRECISION)
        ctx.rounding = ROUND_CEILING
        rounding = value * eps * ops
        majorant = Decimal(n) * Decimal(P) ** (1 - m) / Decimal(m - 1)
        tail = value * (majorant.exp() - 1) + rounding
        return ZetaEstimate(value, tail, P, m, n)


def reciprocal_density(est: ZetaEstimate) -> tuple[Decimal, Decimal]:
    """1/zeta_K(m) with a propagated absolute error bound."""
    with localcontext() as ctx:
        ctx.prec = PRECISION
        if est.value - est.tail_bound <= 0:
            raise ValueError("degenerate estimate: tail bound swallows the value")
        recip = 1 / est.value
        err = est.tail_bound / (est.value * est.value) * Decimal("1.01")
    return recip, err
