"""Time the core operations on seeded random inputs across precisions."""

import argparse
import random
import time
from dataclasses import dataclass

from avkernel.sampling import random_adic, random_regular, random_series
from avkernel.series import evaluate
from avkernel.weierstrass import weierstrass_divide, weierstrass_prepare


@dataclass
class BenchConfig:
    precisions: tuple = (4, 8, 16, 32)
    nvars: int = 2
    degree: int = 3
    repeats: int = 10
    seed: int = 0


def timed(fn, repeats):
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


def run(cfg: BenchConfig):
    rows = []
    for N in cfg.precisions:
        rng = random.Random(cfg.seed + N)
        f = random_regular(rng, cfg.nvars, N, cfg.degree)
        g = random_series(rng, cfg.nvars, N)
        ys = [random_adic(rng, N) for _ in range(cfg.nvars)]
        rows.append((
            N,
            timed(lambda: f * g, cfg.repeats),
            timed(lambda: evaluate(g, ys), cfg.repeats),
            timed(lambda: weierstrass_divide(f, g), cfg.repeats),
            timed(lambda: weierstrass_prepare(f), cfg.repeats),
        ))
    return rows


def cli():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--precisions", type=int, nargs="+", default=list(BenchConfig.precisions))
    p.add_argument("--nvars", type=int, default=BenchConfig.nvars)
    p.add_argument("--degree", type=int, default=BenchConfig.degree)
    p.add_argument("--repeats", type=int, default=BenchConfig.repeats)
    p.add_argument("--seed", type=int, default=BenchConfig.seed)
    args = p.parse_args()
    cfg = BenchConfig(tuple(args.precisions), args.nvars, args.degree, args.repeats, args.seed)
    print(f"{'N':>3} {'mul ms':>8} {'eval ms':>8} {'wdiv ms':>8} {'wprep ms':>8}")
    for N, *times in run(cfg):
        print(f"{N:3d} " + " ".join(f"{1000 * x:8.2f}" for x in times))


if __name__ == "__main__":
    cli()
