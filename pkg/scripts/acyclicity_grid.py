#!/usr/bin/env python3
"""Sweep small (genus, rank, drops) grids and tabulate acyclicity verdicts.

For every cell the script prints the numeric bound, then walks a window
of symmetric-power indices starting at the bound (or at 1 when the bound
is nonpositive) and records the verdict, attaching the singular-stratum
witness whenever one exists.

Example:
    python3 scripts/acyclicity_grid.py --max-genus 3 --max-rank 2 --window 3
"""

import argparse
import itertools
from dataclasses import dataclass

from taucycles import (
    Divisor,
    SheafDescriptor,
    acyclicity,
    n_f,
    singularity_certificate,
)


@dataclass(frozen=True)
class GridConfig:
    max_genus: int
    max_rank: int
    points: tuple[str, ...]
    window: int


def iter_drops(rank, points):
    for k in range(len(points) + 1):
        for support in itertools.combinations(points, k):
            for coeffs in itertools.product(range(1, rank + 1), repeat=k):
                yield Divisor(dict(zip(support, coeffs)))


def run(cfg: GridConfig) -> None:
    for genus in range(cfg.max_genus + 1):
        for rank in range(1, cfg.max_rank + 1):
            for drops in iter_drops(rank, cfg.points):
                sheaf = SheafDescriptor(rank, drops)
                bound = n_f(genus, sheaf)
                print(f"g={genus} rank={rank} drops=[{drops.pretty()}] n_F={bound}")
                for n in range(max(1, bound), max(1, bound) + cfg.window):
                    report = acyclicity(genus, sheaf, n)
                    line = f"  n={n}: {report.verdict}"
                    cert = singularity_certificate(genus, sheaf, n)
                    if cert is not None:
                        delta, e = cert
                        line += f"  witness tau[{delta.pretty()}; {e.render() or '0'}]"
                    print(line)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-genus", type=int, default=3)
    ap.add_argument("--max-rank", type=int, default=2)
    ap.add_argument("--points", nargs="*", default=["s", "t"])
    ap.add_argument("--window", type=int, default=3)
    args = ap.parse_args()
    if args.window < 1:
        ap.error("--window must be at least 1")
    run(GridConfig(args.max_genus, args.max_rank, tuple(args.points), args.window))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
