"""Seeded random inputs for property checks, experiments and benchmarks.

Every sampler takes a ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .coeff import QQ, AdicCoeff
from .hahn import HahnSeries, truncate
from .series import RestrictedSeries
from .valfield import LaurentElem


@dataclass
class SampleConfig:
    """Desk-scale bounds for random inputs."""

    max_vars: int = 3
    max_degree: int = 8
    max_precision: int = 32
    max_terms: int = 6
    coeff_bound: int = 5
    denom_bound: int = 4
    density: float = 0.5


DEFAULT = SampleConfig()


def random_rational(rng: random.Random, cfg: SampleConfig = DEFAULT, nonzero=False):
    while True:
        c = QQ(rng.randint(-cfg.coeff_bound, cfg.coeff_bound), rng.randint(1, cfg.denom_bound))
        if c or not nonzero:
            return c


def random_adic(rng, N: int, min_ord: int = 0, cfg: SampleConfig = DEFAULT, density=None) -> AdicCoeff:
    density = cfg.density if density is None else density
    coeffs = [
        random_rational(rng, cfg) if k >= min_ord and rng.random() < density else 0 for k in range(N)
    ]
    return AdicCoeff(coeffs, N)


def random_unit(rng, N: int, cfg: SampleConfig = DEFAULT) -> AdicCoeff:
    a = random_adic(rng, N, 1, cfg)
    return a + random_rational(rng, cfg, nonzero=True)


def _monomials(n: int, max_deg: int):
    return [m for m in itertools.product(range(max_deg + 1), repeat=n) if sum(m) <= max_deg]


def random_series(rng, n: int, N: int, max_deg: int = 4, terms: int | None = None,
                  min_ord: int = 0, cfg: SampleConfig = DEFAULT) -> RestrictedSeries:
    monos = _monomials(n, max_deg)
    k = rng.randint(0, min(len(monos), terms or cfg.max_terms))
    chosen = rng.sample(monos, k)
    return RestrictedSeries(n, {m: random_adic(rng, N, min_ord, cfg) for m in chosen}, N)


def random_regular(rng, n: int, N: int, d: int, max_deg: int = 4,
                   cfg: SampleConfig = DEFAULT) -> RestrictedSeries:
    """A series regular in Y_n of degree d (leading residue a nonzero rational)."""
    lead = (0,) * (n - 1) + (d,)
    f = random_series(rng, n, N, max(max_deg, d), min_ord=1, cfg=cfg)
    low_monos = [m for m in _monomials(n, max(max_deg, d)) if m[-1] < d]
    for m in rng.sample(low_monos, min(len(low_monos), rng.randint(0, cfg.max_terms))):
        f = f + RestrictedSeries.monomial(m, n, N, random_adic(rng, N, 0, cfg))
    c = AdicCoeff.constant(random_rational(rng, cfg, nonzero=True), N) + random_adic(rng, N, 1, cfg)
    f = f - RestrictedSeries.monomial(lead, n, N, f.coefficient(lead))
    return f + RestrictedSeries.monomial(lead, n, N, c)


def random_with_residue(rng, n: int, N: int, max_deg: int = 3, cfg: SampleConfig = DEFAULT):
    """A series whose residue is nonzero."""
    while True:
        f = random_series(rng, n, N, max_deg, cfg=cfg)
        if f.residue_poly():
            return f


def random_laurent(rng, N: int, val_range=(-4, 4), cfg: SampleConfig = DEFAULT) -> LaurentElem:
    return LaurentElem(rng.randint(*val_range), random_unit(rng, N, cfg))


def random_hahn(rng, cutoff, denominators=(1, 2, 3, 4), max_terms: int = 4,
                cfg: SampleConfig = DEFAULT, min_exp=0) -> HahnSeries:
    cutoff = QQ(cutoff)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        q = rng.choice(denominators)
        lo = int(min_exp * q)
        hi = int(cutoff * q) + q
        e = QQ(rng.randint(lo, hi), q)
        terms[e] = random_rational(rng, cfg, nonzero=True)
    return HahnSeries(terms, cutoff + rng.choice([0, 1]))


def truncation_closed_generators(rng, cutoff, chains: int = 2, max_terms: int = 2,
                                 cfg: SampleConfig = DEFAULT) -> list:
    """Random elements of positive valuation together with all of their proper truncations."""
    cutoff = QQ(cutoff)
    gens = set()
    for _ in range(chains):
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            q = rng.choice((2, 3, 4, 5))
            terms[QQ(rng.randint(1, int(cutoff * q) - 1), q)] = random_rational(rng, cfg, nonzero=True)
        a = HahnSeries(terms, cutoff)
        gens.add(a)
        for g in a.support:
            if g > a.valuation:
                gens.add(truncate(a, g))
    return sorted(gens, key=HahnSeries.sort_key)
