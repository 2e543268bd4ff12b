"""Ranks of pi_*(MSU) ⊗ Z[1/2] from E2 columns, and the Milnor genus test for generators."""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from cobarkit.adams import column_dims, lam, pi_rank, sn_report


@dataclass
class NovikovConfig:
    n_max: int = 12
    primes: tuple[int, ...] = field(default_factory=lambda: (3, 5))


def run(cfg: NovikovConfig) -> None:
    print(" n  rank  lambda_n  s_n odd part  columns")
    for n in range(2, cfg.n_max + 1):
        cols = "  ".join(f"p={p}:{column_dims(p, n, n + 2)}" for p in cfg.primes)
        r = sn_report(n)
        print(f"{n:>2}  {pi_rank(n, cfg.primes):>4}  {lam(n):>8}  {r.sn_odd_part:>12}  {cols}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=12)
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5])
    a = ap.parse_args()
    run(NovikovConfig(a.nmax, tuple(a.primes)))


if __name__ == "__main__":
    main()
