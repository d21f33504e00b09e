"""Decomposition of rational primes in Z[theta].

Splitting is read off the factorization of f mod p.  That is exact only
where Z[theta] is p-maximal, so every prime dividing disc(f) is first run
through Dedekind's criterion and a :class:`NonMaximalAtP` is raised when it
fails.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .ideals import HNFIdeal, ideal_from_generators
from .number_field import NumberFieldOrder
from .polynomials import IntPolynomial, ModPPolynomial, factor_mod_p
from .primes import is_prime, prime_divisors

CACHE_ENV = "NF_DENSITY_CACHE"


class NonMaximalAtP(Exception):
    """Z[theta] is not the maximal order at p; the field is refused."""

    def __init__(self, p: int, poly: IntPolynomial | None = None):
        self.p = p
        self.poly = poly
        where = f" for {poly}" if poly is not None else ""
        super().__init__(f"Z[theta] is not maximal at p = {p}{where} (Dedekind criterion fails)")


def dedekind_p_maximal(f: IntPolynomial, p: int) -> bool:
    """Dedekind's criterion for p-maximality of Z[x]/(f)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not f.is_monic():
        raise ValueError("defining polynomial must be monic")
    fac = factor_mod_p(f, p)
    g_bar = ModPPolynomial._raw(p, (1,))
    for g, _ in fac.factors:
        g_bar = g_bar * g
    f_bar = f.mod(p)
    h_bar, rem = divmod(f_bar, g_bar)
    assert rem.is_zero()
    g, h = g_bar.lift(), h_bar.lift()
    diff = g * h - f
    assert all(c % p == 0 for c in diff.coeffs)
    t_bar = ModPPolynomial(p, [c // p for c in diff.coeffs])
    common = t_bar.gcd(g_bar).gcd(h_bar)
    return common.degree == 0


@dataclass(frozen=True)
class PrimeFactor:
    d: int  # inertia degree
    e: int  # ramification index
    generator: ModPPolynomial


@dataclass(frozen=True)
class PrimeSplit:
    p: int
    factors: tuple[PrimeFactor, ...]

    @property
    def lambda_p(self) -> int:
        return len(self.factors)

    @property
    def D_p(self) -> int:
        return sum(fa.d for fa in self.factors)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(fa.d for fa in self.factors)

    @property
    def ramification(self) -> tuple[int, ...]:
        return tuple(fa.e for fa in self.factors)

    def ed_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((fa.e, fa.d) for fa in self.factors)

    def degree_sum(self) -> int:
        return sum(fa.e * fa.d for fa in self.factors)


def _require_maximal_at(order: NumberFieldOrder, p: int) -> None:
    if order.disc % p == 0 and not dedekind_p_maximal(order.poly, p):
        raise NonMaximalAtP(p, order.poly)


def split_prime(order: NumberFieldOrder, p: int) -> PrimeSplit:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    _require_maximal_at(order, p)
    fac = factor_mod_p(order.poly, p)
    split = PrimeSplit(p, tuple(PrimeFactor(g.degree, e, g) for g, e in fac.factors))
    assert split.degree_sum() == order.n
    return split


def prime_ideal(order: NumberFieldOrder, split: PrimeSplit, j: int) -> HNFIdeal:
    """The prime (p, g_j(theta)) above p, as an HNF ideal in the active basis."""
    if not 0 <= j < split.lambda_p:
        raise IndexError(f"prime index {j} out of range for lambda_p = {split.lambda_p}")
    g = split.factors[j].generator.lift()
    ideal = ideal_from_generators([order.from_int(split.p), order.eval_poly(g)])
    assert isinstance(ideal, HNFIdeal) and ideal.norm == split.p ** split.factors[j].d
    return ideal


def prime_ideals(order: NumberFieldOrder, p: int) -> list[HNFIdeal]:
    split = split_prime(order, p)
    return [prime_ideal(order, split, j) for j in range(split.lambda_p)]


_maximal_checked: dict[IntPolynomial, bool] = {}


def assert_maximal(order: NumberFieldOrder) -> None:
    """Raise NonMaximalAtP for the smallest p | disc(f) where Z[theta] is not maximal."""
    f = order.poly
    if _maximal_checked.get(f):
        return
    if order.disc != 0:
        for p in prime_divisors(order.disc):
            if not dedekind_p_maximal(f, p):
                raise NonMaximalAtP(p, f)
    _maximal_checked[f] = True


# ---------------------------------------------------------------------------
# splitting-type cache: one text file per defining polynomial


def default_cache_dir() -> Path | None:
    env = os.environ.get(CACHE_ENV)
    if env is not None:
        return Path(env) if env else None
    return Path.home() / ".cache" / "nfdensity"


class SplittingCache:
    """In-memory (e, d) table per polynomial, persisted as ``p;e1,d1;e2,d2``."""

    def __init__(self, directory: Path | str | None = None, *, use_default: bool = True):
        if directory is None and use_default:
            directory = default_cache_dir()
        self.directory = Path(directory) if directory is not None else None
        self._tables: dict[str, dict[int, tuple[tuple[int, int], ...]]] = {}
        self._dirty: set[str] = set()
        self._lock = threading.Lock()

    def path_for(self, order: NumberFieldOrder) -> Path | None:
        if self.directory is None:
            return None
        return self.directory / f"{order.poly_key}.split"

    def _table(self, order: NumberFieldOrder) -> dict[int, tuple[tuple[int, int], ...]]:
        key = str(order.poly)
        table = self._tables.get(key)
        if table is None:
            table = {}
            path = self.path_for(order)
            if path is not None and path.exists():
                table = read_cache_file(path, expected_poly=key)
            self._tables[key] = table
        return table

    def splitting_type(self, order: NumberFieldOrder, p: int) -> tuple[tuple[int, int], ...]:
        table = self._table(order)
        hit = table.get(p)
        if hit is not None:
            return hit
        ed = split_prime(order, p).ed_pairs()
        with self._lock:
            table[p] = ed
            self._dirty.add(str(order.poly))
        return ed

    def flush(self, order: NumberFieldOrder) -> None:
        key = str(order.poly)
        path = self.path_for(order)
        if path is None or key not in self._dirty:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        write_cache_file(path, key, self._tables[key])
        self._dirty.discard(key)


def write_cache_file(path: Path, poly: str, table: dict[int, tuple[tuple[int, int], ...]]) -> None:
    lines = [f"# poly: {poly}"]
    for p in sorted(table):
        lines.append(";".join([str(p)] + [f"{e},{d}" for e, d in table[p]]))
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
    tmp.replace(path)


def read_cache_file(path: Path, expected_poly: str | None = None) -> dict[int, tuple[tuple[int, int], ...]]:
    table = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith("# poly:"):
            raise ValueError(f"{path}: missing poly header")
        poly = header[len("# poly:"):].strip()
        if expected_poly is not None and poly != expected_poly:
            raise ValueError(f"{path}: cache is for {poly!r}, not {expected_poly!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            head, *rest = line.split(";")
            table[int(head)] = tuple(tuple(int(x) for x in item.split(",")) for item in rest)
    return table


_default_cache: SplittingCache | None = None


def get_cache() -> SplittingCache:
    global _default_cache
    directory = default_cache_dir()
    if _default_cache is None or _default_cache.directory != directory:
        _default_cache = SplittingCache(directory, use_default=False)
    return _default_cache


def splitting_types(order: NumberFieldOrder, primes: Iterable[int],
                    cache: SplittingCache | None = None) -> dict[int, tuple[tuple[int, int], ...]]:
    cache = cache or get_cache()
    out = {p: cache.splitting_type(order, p) for p in primes}
    cache.flush(order)
    return out
