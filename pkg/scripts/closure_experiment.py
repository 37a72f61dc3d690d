"""Sample truncation closedness of ring closures of Hahn generators.

For seeded sets of truncation-closed generators (every generator comes with its
proper truncations) the closure sample should again be truncation closed. Each
run also includes a negative control, a generator whose truncation is not
reachable, which must be reported with a counterexample.
"""

import argparse
import random
import time
from dataclasses import dataclass

from avkernel.coeff import QQ
from avkernel.hahn import HahnSeries, closure_sample, truncation_closed_on_sample
from avkernel.literals import parse_series
from avkernel.sampling import truncation_closed_generators


@dataclass
class ClosureConfig:
    seeds: int = 20
    max_depth: int = 3
    cutoff: int = 3
    chains: int = 2
    max_terms: int = 2
    with_geo: bool = False
    budget: int = 20000


def geometric(N: int):
    return parse_series(" + ".join(f"t^{k}*Y1^{k}" for k in range(N)) + f" (mod t^{N})")


def run(cfg: ClosureConfig):
    registry = {"geo": geometric(cfg.cutoff + 1)} if cfg.with_geo else {}
    rows = []
    for seed in range(cfg.seeds):
        rng = random.Random(seed)
        gens = truncation_closed_generators(rng, cfg.cutoff, cfg.chains, cfg.max_terms)
        depth = seed % (cfg.max_depth + 1)
        start = time.perf_counter()
        sample = closure_sample(gens, registry, depth, cfg.cutoff, cfg.budget)
        verdict = truncation_closed_on_sample(sample)
        rows.append((seed, depth, len(gens), len(sample), verdict.closed, time.perf_counter() - start))
    control = HahnSeries({QQ(1, 2): 1, QQ(1, 3): 1}, cfg.cutoff)
    verdict = truncation_closed_on_sample(closure_sample([control], registry, 1, cfg.cutoff, cfg.budget))
    return rows, verdict


def cli():
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(ClosureConfig()).items():
        kind = (lambda s: s.lower() in ("1", "true", "yes")) if isinstance(default, bool) else type(default)
        p.add_argument(f"--{name.replace('_', '-')}", type=kind, default=default)
    cfg = ClosureConfig(**vars(p.parse_args()))
    rows, control = run(cfg)
    print(f"{'seed':>4} {'depth':>5} {'gens':>4} {'sample':>6} {'closed':>6} {'sec':>6}")
    for seed, depth, ngens, size, closed, sec in rows:
        print(f"{seed:4d} {depth:5d} {ngens:4d} {size:6d} {str(closed):>6} {sec:6.2f}")
    closed = sum(r[4] for r in rows)
    print(f"closed on sample: {closed}/{len(rows)}")
    print(f"negative control closed={control.closed} element={control.element} gamma={control.gamma}")


if __name__ == "__main__":
    cli()
