"""Densities of coprime tuples over boxes O[B, E]^m.

Box tuples are processed in numpy batches of shape (k, m, n) holding
active-basis coordinates.  Coprimality of a batch is decided exactly:

* the gcd g of the m element norms lies in the ideal I_z, so every prime
  containing I_z lies over a rational prime dividing g (g = 0 only for the
  zero tuple);
* for small p | g the residue test "all z_i in P" is run against every
  prime P above p, which rejects exactly the tuples with I_z inside P;
* once the small primes are stripped from g, tuples with cofactor 1 are
  coprime, and the rest go to a modular HNF of I_z with modulus g.

Samples are drawn per block from a generator seeded by (seed, block), so
sample i depends only on (seed, i).
"""

from __future__ import annotations

import csv
import enum
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from math import gcd, prod
from statistics import NormalDist
from typing import Iterable, Sequence

import numpy as np

from .ideals import HNFIdeal, is_coprime_power_coords, is_coprime_tuple
from .number_field import NumberFieldOrder
from .polynomials import _mmod
from .primes import first_primes, is_prime, primes_upto
from .splitting import assert_maximal, split_prime
from .zeta import reciprocal_density, zeta_K

DEFAULT_BUDGET = 10**9
SIEVE_PRIMES = tuple(primes_upto(37))
CHUNK = 1 << 18
SAMPLE_BLOCK = 1 << 16
CI_LEVEL = 0.99
_Z = NormalDist().inv_cdf(0.5 + CI_LEVEL / 2)
_INT64_SAFE = 1 << 62


class Mode(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


class BudgetExceeded(Exception):
    def __init__(self, needed: int, budget: int, what: str = "exhaustive enumeration"):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what} needs {needed} points, budget is {budget}")


@dataclass(frozen=True)
class BoxSpec:
    B: int
    m: int
    order: NumberFieldOrder

    def __post_init__(self):
        if self.B < 1 or self.m < 1:
            raise ValueError("B and m must be positive")

    @property
    def n(self) -> int:
        return self.order.n

    @property
    def total(self) -> int:
        return (2 * self.B) ** (self.m * self.n)


@dataclass(frozen=True)
class PrimeSet:
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(int(p) for p in self.primes))
        if len(set(ps)) != len(ps):
            raise ValueError("primes must be distinct")
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def first(cls, t: int) -> "PrimeSet":
        return cls(tuple(first_primes(t)))

    @property
    def N(self) -> int:
        return prod(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def issubset(self, other: "PrimeSet") -> bool:
        return set(self.primes) <= set(other.primes)


def _as_primeset(S) -> PrimeSet:
    return S if isinstance(S, PrimeSet) else PrimeSet(tuple(S))


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class DensityReport:
    mode: Mode
    hits: int
    trials: int
    estimate: Fraction | float
    B: int
    m: int
    basis: str
    poly: str
    ci_halfwidth: float | None = None
    seed: int | None = None
    target: str = "E"
    primes: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out = {
            "mode": self.mode.value,
            "target": self.target,
            "hits": self.hits,
            "trials": self.trials,
            "estimate": _frac_str(self.estimate) if isinstance(self.estimate, Fraction) else self.estimate,
            "B": self.B,
            "m": self.m,
            "basis": self.basis,
            "poly": self.poly,
        }
        if self.mode is Mode.SAMPLED:
            out["ci_halfwidth"] = self.ci_halfwidth
            out["seed"] = self.seed
        if self.primes is not None:
            out["primes"] = list(self.primes)
        return out


# ---------------------------------------------------------------------------
# batch classification


def residue_map(order: NumberFieldOrder, p: int, generator: Sequence[int]) -> np.ndarray:
    """Matrix Q over F_p with z in (p, g(theta)) iff coords(z) @ Q == 0 mod p."""
    n = order.n
    g = list(generator)
    d = len(g) - 1
    rows = []
    for t in range(n):
        r = _mmod([0] * t + [1], g, p)
        rows.append(r + [0] * (d - len(r)))
    R = np.array(rows, dtype=object).reshape(n, d)
    M = np.array(order.basis.to_power, dtype=object)
    return np.array((M.dot(R)) % p, dtype=np.int64)


class TupleClassifier:
    """Exact vectorized membership tests for E and E_S on an order."""

    def __init__(self, order: NumberFieldOrder):
        assert_maximal(order)
        self.order = order
        self.n = order.n
        self.M = np.array(order.basis.to_power, dtype=np.int64)
        self.monomials = [(c, e) for e, c in order.norm_form.items()]
        self._maps: dict[int, list[np.ndarray]] = {}

    def maps(self, p: int) -> list[np.ndarray]:
        got = self._maps.get(p)
        if got is None:
            split = split_prime(self.order, p)
            got = [residue_map(self.order, p, fa.generator.coeffs) for fa in split.factors]
            self._maps[p] = got
        return got

    def fits_int64(self, B: int, primes: Iterable[int] = SIEVE_PRIMES) -> bool:
        pmax = max(list(primes) + [2])
        return (self.order.norm_constant * B**self.n < _INT64_SAFE
                and B * self.n * pmax < _INT64_SAFE
                and int(np.abs(self.M).sum()) * B < _INT64_SAFE)

    def norms(self, coords: np.ndarray) -> np.ndarray:
        out = np.zeros(coords.shape[:-1], dtype=np.int64)
        for c, exps in self.monomials:
            term = np.full(coords.shape[:-1], c, dtype=np.int64)
            for i, e in enumerate(exps):
                if e:
                    term *= coords[..., i] ** e
            out += term
        return out

    def _inside(self, coords: np.ndarray, p: int, Q: np.ndarray) -> np.ndarray:
        """Tuples whose every entry lies in the prime with residue map Q."""
        return ((coords @ Q) % p == 0).all(axis=-1).all(axis=-1)

    def coprime_mask(self, coords: np.ndarray) -> np.ndarray:
        k = coords.shape[0]
        g = np.gcd.reduce(np.abs(self.norms(coords)), axis=1) if k else np.zeros(0, np.int64)
        alive = g != 0
        cof = g.copy()
        for p in SIEVE_PRIMES:
            div = alive & (cof % p == 0)
            if not div.any():
                continue
            idx = np.nonzero(div)[0]
            sub = coords[idx]
            for Q in self.maps(p):
                alive[idx[self._inside(sub, p, Q)]] = False
            while True:
                d = (cof != 0) & (cof % p == 0)
                if not d.any():
                    break
                cof[d] //= p
        result = alive & (cof == 1)
        pending = np.nonzero(alive & (cof > 1))[0]
        if len(pending):
            power = coords[pending] @ self.M
            for i, tup in zip(pending, power.tolist()):
                result[i] = is_coprime_power_coords(self.order, tup, int(g[i]))
        return result

    def es_mask(self, coords: np.ndarray, S: PrimeSet) -> np.ndarray:
        alive = np.ones(coords.shape[0], dtype=bool)
        for p in S:
            for Q in self.maps(p):
                alive &= ~self._inside(coords, p, Q)
        return alive

    # exact per-tuple fallbacks for coordinates beyond int64 range

    def coprime_python(self, tup: Sequence[Sequence[int]]) -> bool:
        o = self.order
        D = 0
        power = []
        for a in tup:
            D = gcd(D, o.eval_norm_form(a))
            power.append(o.to_power(a))
        if D == 0:
            return False
        return is_coprime_power_coords(o, power, abs(D))

    def es_python(self, tup: Sequence[Sequence[int]], S: PrimeSet) -> bool:
        for p in S:
            for Q in self.maps(p):
                Qo = Q.astype(object)
                if all(not any(x % p for x in np.array(a, dtype=object).dot(Qo)) for a in tup):
                    return False
        return True


def _hnf_coprime_mask(order: NumberFieldOrder, coords: np.ndarray) -> np.ndarray:
    """Reference route: full HNF of I_z for every tuple."""
    out = np.zeros(coords.shape[0], dtype=bool)
    for i, tup in enumerate(coords.tolist()):
        out[i] = is_coprime_tuple([order.element(a) for a in tup])
    return out


def box_coords(box: BoxSpec, start: int, stop: int) -> np.ndarray:
    """Tuples with odometer index in [start, stop), last coordinate fastest."""
    width = 2 * box.B
    dims = box.m * box.n
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, dims), dtype=np.int64)
    for j in range(dims - 1, -1, -1):
        idx, out[:, j] = np.divmod(idx, width)
    return (out - box.B).reshape(-1, box.m, box.n)


def sample_coords(box: BoxSpec, seed: int, start: int, stop: int) -> np.ndarray:
    """Samples with index in [start, stop); sample i is a pure function of (seed, i)."""
    parts = []
    b0, b1 = start // SAMPLE_BLOCK, (stop - 1) // SAMPLE_BLOCK
    for b in range(b0, b1 + 1):
        rng = np.random.default_rng([seed, b])
        block = rng.integers(-box.B, box.B, size=(SAMPLE_BLOCK, box.m, box.n), dtype=np.int64)
        lo = max(start, b * SAMPLE_BLOCK) - b * SAMPLE_BLOCK
        hi = min(stop, (b + 1) * SAMPLE_BLOCK) - b * SAMPLE_BLOCK
        parts.append(block[lo:hi])
    return np.concatenate(parts) if parts else np.zeros((0, box.m, box.n), np.int64)


def _workers(workers: int | None) -> int:
    return max(1, workers or os.cpu_count() or 1)


def _count(box: BoxSpec, mode: Mode, classify, sample_count, seed, budget, workers) -> tuple[int, int]:
    mode = Mode(mode)
    if mode is Mode.EXHAUSTIVE:
        total = box.total
        if total > budget:
            raise BudgetExceeded(total, budget)
        ranges = [(a, min(a + CHUNK, total)) for a in range(0, total, CHUNK)]
        fetch = lambda r: box_coords(box, *r)
    else:
        if sample_count is None or seed is None:
            raise ValueError("sampled mode requires sample_count and seed")
        total = int(sample_count)
        if total < 1:
            raise ValueError("sample_count must be positive")
        step = SAMPLE_BLOCK * 4
        ranges = [(a, min(a + step, total)) for a in range(0, total, step)]
        fetch = lambda r: sample_coords(box, int(seed), *r)

    def work(r):
        return int(np.count_nonzero(classify(fetch(r))))

    nw = _workers(workers)
    if nw == 1 or len(ranges) == 1:
        hits = sum(map(work, ranges))
    else:
        with ThreadPoolExecutor(max_workers=nw) as pool:
            hits = sum(pool.map(work, ranges))
    return hits, total


def _python_classify(tuple_test):
    def classify(coords: np.ndarray) -> np.ndarray:
        return np.array([tuple_test(t) for t in coords.tolist()], dtype=bool)
    return classify


def _report(box, mode, hits, trials, seed, target, primes=None) -> DensityReport:
    mode = Mode(mode)
    if mode is Mode.EXHAUSTIVE:
        est: Fraction | float = Fraction(hits, trials)
        ci = None
        seed = None
    else:
        est = hits / trials
        ci = _Z * (est * (1 - est) / trials) ** 0.5
    return DensityReport(mode, hits, trials, est, box.B, box.m, box.order.basis.fingerprint(),
                         str(box.order.poly), ci, seed, target, primes)


def empirical_density_E(order: NumberFieldOrder, box: BoxSpec, mode: Mode | str = Mode.EXHAUSTIVE,
                        sample_count: int | None = None, seed: int | None = None, *,
                        budget: int = DEFAULT_BUDGET, workers: int | None = None,
                        fast: bool = True) -> DensityReport:
    """Share of tuples in O[B, E]^m (or a seeded sample) that are coprime."""
    clf = TupleClassifier(order)
    if not fast:
        classify = lambda c: _hnf_coprime_mask(order, c)
    elif clf.fits_int64(box.B):
        classify = clf.coprime_mask
    else:
        classify = _python_classify(clf.coprime_python)
    hits, trials = _count(box, mode, classify, sample_count, seed, budget, workers)
    return _report(box, mode, hits, trials, seed, "E")


def empirical_density_ES(order: NumberFieldOrder, box: BoxSpec, S, mode: Mode | str = Mode.EXHAUSTIVE,
                         sample_count: int | None = None, seed: int | None = None, *,
                         budget: int = DEFAULT_BUDGET, workers: int | None = None) -> DensityReport:
    """Share of tuples whose ideal is coprime to every p in S (residue test)."""
    S = _as_primeset(S)
    clf = TupleClassifier(order)
    if clf.fits_int64(box.B, S.primes):
        classify = lambda c: clf.es_mask(c, S)
    else:
        classify = _python_classify(lambda t: clf.es_python(t, S))
    hits, trials = _count(box, mode, classify, sample_count, seed, budget, workers)
    return _report(box, mode, hits, trials, seed, "E_S", S.primes)


def exact_count_ES(order: NumberFieldOrder, S, q: int, m: int) -> int:
    """|E_S cap O[qN]^m| from the splitting data of the primes in S."""
    S = _as_primeset(S)
    if q < 1 or m < 1:
        raise ValueError("q and m must be positive")
    n = order.n
    total = (2 * q) ** (m * n)
    for p in S:
        split = split_prime(order, p)
        total *= p ** (n * m - m * split.D_p) * prod(p ** (d * m) - 1 for d in split.degrees)
    return total


def exact_density_ES(order: NumberFieldOrder, S, m: int) -> Fraction:
    S = _as_primeset(S)
    out = Fraction(1)
    for p in S:
        for d in split_prime(order, p).degrees:
            out *= 1 - Fraction(1, p ** (d * m))
    return out


# ---------------------------------------------------------------------------
# lattice points of an ideal in a box


@dataclass(frozen=True)
class LatticeCheck:
    B: int
    ideal_norm: int
    count: int
    main_term: Fraction
    deviation: Fraction
    normalized: float

    def to_json(self) -> dict:
        return {"B": self.B, "norm": self.ideal_norm, "count": self.count,
                "main_term": _frac_str(self.main_term), "deviation": _frac_str(self.deviation),
                "normalized_deviation": self.normalized}


def hnf_member_mask(rows: Sequence[Sequence[int]], pts: np.ndarray) -> np.ndarray:
    H = np.array(rows, dtype=np.int64)
    v = pts.copy()
    ok = np.ones(len(v), dtype=bool)
    for k in range(H.shape[0]):
        q, r = np.divmod(v[:, k], H[k, k])
        ok &= r == 0
        v -= q[:, None] * H[k]
    return ok


def lattice_count_check(order: NumberFieldOrder, ideal: HNFIdeal, B: int, *,
                        budget: int = DEFAULT_BUDGET) -> LatticeCheck:
    """Count I cap O[B] exhaustively and compare with (2B)^n / N(I)."""
    if not order.same_basis(ideal.order):
        raise ValueError("ideal must be expressed in the order's active basis")
    box = BoxSpec(B, 1, order)
    total = box.total
    if total > budget:
        raise BudgetExceeded(total, budget)
    count = 0
    for a in range(0, total, CHUNK):
        pts = box_coords(box, a, min(a + CHUNK, total)).reshape(-1, order.n)
        count += int(np.count_nonzero(hnf_member_mask(ideal.rows, pts)))
    main = Fraction(total, ideal.norm)
    dev = abs(count - main)
    normalized = float(dev / (2 * B) ** (order.n - 1))
    return LatticeCheck(B, ideal.norm, count, main, dev, normalized)


# ---------------------------------------------------------------------------
# convergence tables


@dataclass
class ConvergenceRow:
    B: int
    t: int | None
    estimate: Fraction | float
    reference: Fraction | Decimal | float
    abs_diff: Fraction | float
    mode: Mode
    seed: int | None = None
    extra: dict = field(default_factory=dict)

    def as_csv_row(self) -> list[str]:
        def fmt(x):
            if x is None:
                return ""
            if isinstance(x, Fraction):
                return _frac_str(x)
            return str(x)
        return [str(self.B), fmt(self.t), fmt(self.estimate), fmt(self.reference),
                fmt(self.abs_diff), Mode(self.mode).value, fmt(self.seed)]

    def to_json(self) -> dict:
        return dict(zip(CSV_HEADER, self.as_csv_row()))


CSV_HEADER = ["B", "t", "estimate", "reference", "abs_diff", "mode", "seed"]


def _diff(est, ref):
    if isinstance(est, Fraction) and isinstance(ref, Fraction):
        return abs(est - ref)
    return abs(float(est) - float(ref))


def density_convergence_table(order: NumberFieldOrder, m: int, B_schedule: Sequence[int] | None = None,
                              t_schedule: Sequence[int] | None = None, *, q: int = 1,
                              mode: Mode | str = Mode.EXHAUSTIVE, sample_count: int | None = None,
                              seed: int | None = None, P: int = 10**5,
                              budget: int = DEFAULT_BUDGET, workers: int | None = None) -> list[ConvergenceRow]:
    """Estimates against their limits along a schedule.

    With ``t_schedule`` the rows track E_{S_t}, S_t the first t primes, at
    each B of ``B_schedule`` (default B = q * N_t, where the estimate is exact).
    Otherwise the rows track E against 1/zeta_K(m) (0 for m = 1).
    """
    mode = Mode(mode)
    rows: list[ConvergenceRow] = []
    if t_schedule is not None:
        if not t_schedule:
            raise ValueError("empty t schedule")
        for t in t_schedule:
            S = PrimeSet.first(t)
            ref = exact_density_ES(order, S, m)
            for B in (B_schedule or [q * S.N]):
                rep = empirical_density_ES(order, BoxSpec(B, m, order), S, mode, sample_count, seed,
                                           budget=budget, workers=workers)
                rows.append(ConvergenceRow(B, t, rep.estimate, ref, _diff(rep.estimate, ref), mode, rep.seed))
        return rows
    if not B_schedule:
        raise ValueError("empty B schedule")
    if m >= 2:
        ref, _ = reciprocal_density(zeta_K(order, m, P))
    else:
        ref = Fraction(0)
    for B in B_schedule:
        rep = empirical_density_E(order, BoxSpec(B, m, order), mode, sample_count, seed,
                                  budget=budget, workers=workers)
        rows.append(ConvergenceRow(B, None, rep.estimate, ref, _diff(rep.estimate, ref), mode, rep.seed))
    return rows


def rows_to_csv(rows: Sequence[ConvergenceRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.as_csv_row())
    return buf.getvalue()


# ---------------------------------------------------------------------------
# the quadrant example in Z[i]


def quadrant_count(order: NumberFieldOrder, B: int) -> int:
    """|O[B, E] cap {x + iy : x, y > 0}| for K = Q(i) in the order's basis."""
    if str(order.poly) != "x^2 + 1":
        raise ValueError("the quadrant demo is defined for Z[i] only")
    box = BoxSpec(B, 1, order)
    M = np.array(order.basis.to_power, dtype=np.int64)
    count = 0
    for a in range(0, box.total, CHUNK):
        pts = box_coords(box, a, min(a + CHUNK, box.total)).reshape(-1, 2) @ M
        count += int(np.count_nonzero((pts[:, 0] > 0) & (pts[:, 1] > 0)))
    return count

