"""Rational prime utilities: a plain sieve, primality, and first-t primes."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from sympy import factorint, isprime


def primes_upto(n: int) -> list[int]:
    """All primes p <= n (Sieve of Eratosthenes)."""
    if n < 2:
        return []
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return [int(p) for p in np.nonzero(flags)[0]]


@lru_cache(maxsize=65536)
def is_prime(n: int) -> bool:
    return bool(isprime(n))


def first_primes(t: int) -> list[int]:
    if t < 0:
        raise ValueError("t must be non-negative")
    out: list[int] = []
    bound = 16
    while len(out) < t:
        bound *= 2
        out = primes_upto(bound)
    return out[:t]


def prime_divisors(n: int) -> list[int]:
    if n == 0:
        raise ValueError("0 has no finite prime factorization")
    return sorted(factorint(abs(n)))
