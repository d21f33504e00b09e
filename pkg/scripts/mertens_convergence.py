"""Convergence of the coprime-tuple density towards 1/zeta_K(m).

Writes a CSV with one row per box bound.  Small bounds are enumerated,
larger ones sampled with a fixed seed.

    python3 scripts/mertens_convergence.py --poly "x^2 + 1" -m 2 --out conv.csv
"""

import argparse
import sys
from dataclasses import dataclass

from nfdensity.density import Mode, density_convergence_table, rows_to_csv
from nfdensity.number_field import NumberFieldOrder


@dataclass
class Config:
    poly: str = "x^2 + 1"
    m: int = 2
    exhaustive_B: tuple[int, ...] = (5, 10, 20, 40)
    sampled_B: tuple[int, ...] = (100, 1000, 10000, 100000)
    samples: int = 400_000
    seed: int = 2024
    P: int = 100_000


def run(cfg: Config) -> str:
    order = NumberFieldOrder(cfg.poly)
    rows = density_convergence_table(order, cfg.m, list(cfg.exhaustive_B), P=cfg.P)
    rows += density_convergence_table(order, cfg.m, list(cfg.sampled_B), mode=Mode.SAMPLED,
                                      sample_count=cfg.samples, seed=cfg.seed, P=cfg.P)
    return rows_to_csv(rows)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--poly", default=Config.poly)
    ap.add_argument("-m", type=int, default=Config.m)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--out")
    args = ap.parse_args(argv)
    text = run(Config(poly=args.poly, m=args.m, samples=args.samples, seed=args.seed))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
