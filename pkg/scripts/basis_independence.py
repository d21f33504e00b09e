"""Compare sampled densities of coprime pairs across unimodular bases.

The limit does not depend on the basis; at finite B the estimates should
agree within their confidence intervals.  The quadrant set is printed as a
contrast: its density does change with the basis.
"""

import argparse
from dataclasses import dataclass, field

from nfdensity.density import BoxSpec, Mode, empirical_density_E, quadrant_count
from nfdensity.number_field import NumberFieldOrder

BASES = {
    "{1, i}": [[1, 0], [0, 1]],
    "{1, -1+i}": [[1, 0], [-1, 1]],
    "{1, 3+i}": [[1, 0], [3, 1]],
    "{2+i, 1+i}": [[2, 1], [1, 1]],
}


@dataclass
class Config:
    B: int = 10_000
    m: int = 2
    samples: int = 1_000_000
    seed: int = 1
    quadrant_B: list[int] = field(default_factory=lambda: [50, 500])


def run(cfg: Config) -> None:
    gauss = NumberFieldOrder("x^2 + 1")
    print(f"{'basis':<12} {'estimate':>10} {'ci':>9}  quadrant counts")
    for k, (name, rows) in enumerate(BASES.items()):
        order = gauss.with_basis(rows)
        rep = empirical_density_E(order, BoxSpec(cfg.B, cfg.m, order), Mode.SAMPLED, cfg.samples, cfg.seed + k)
        quad = [quadrant_count(order, b) for b in cfg.quadrant_B]
        print(f"{name:<12} {rep.estimate:>10.6f} {rep.ci_halfwidth:>9.6f}  {quad}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-B", type=int, default=Config.B)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args(argv)
    run(Config(B=args.B, samples=args.samples, seed=args.seed))


if __name__ == "__main__":
    main()
