"""Exact counts of E_S over O[qN]^m against the closed formula.

For each bundled field and each small configuration the enumeration is
compared with exact_count_ES; any mismatch makes the script exit 1.
"""

import argparse
import sys
import warnings
from dataclasses import dataclass

from nfdensity.density import BoxSpec, PrimeSet, empirical_density_ES, exact_count_ES
from nfdensity.number_field import BUNDLED_FIELDS, IrreducibilityWarning, NumberFieldOrder


@dataclass
class Config:
    prime_sets: tuple[tuple[int, ...], ...] = ((2,), (3,), (2, 3), (5,))
    q_values: tuple[int, ...] = (1, 2)
    m_values: tuple[int, ...] = (1, 2)
    budget: int = 5_000_000


def run(cfg: Config) -> int:
    mismatches = 0
    for name, poly in BUNDLED_FIELDS.items():
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IrreducibilityWarning)
            order = NumberFieldOrder(poly)
        for S in map(PrimeSet, cfg.prime_sets):
            for q in cfg.q_values:
                for m in cfg.m_values:
                    box = BoxSpec(q * S.N, m, order)
                    if box.total > cfg.budget:
                        continue
                    counted = empirical_density_ES(order, box, S).hits
                    formula = exact_count_ES(order, S, q, m)
                    flag = "ok" if counted == formula else "MISMATCH"
                    mismatches += counted != formula
                    print(f"{name:<11} S={list(S)!s:<7} q={q} m={m}  {counted:>10} {formula:>10}  {flag}")
    return mismatches


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--budget", type=int, default=Config.budget)
    args = ap.parse_args(argv)
    sys.exit(1 if run(Config(budget=args.budget)) else 0)


if __name__ == "__main__":
    main()
