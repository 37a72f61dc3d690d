"""Lift roots of the standard families and compare them with closed-form expansions.

Square and cube roots of 1 + t are compared with the binomial series, the small
root of x^2 - x + t with the Catalan generating function t*C(t).
"""

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from avkernel.coeff import AdicCoeff
from avkernel.hensel import Poly1, hensel_root, hensel_root_quadratic, solve_special
from avkernel.literals import parse_adic


@dataclass
class HenselConfig:
    precision: int = 32
    degrees: tuple = (2, 3, 5)


def binomial(p: Fraction, N: int):
    out, c = [], Fraction(1)
    for k in range(N):
        out.append(c)
        c = c * (p - k) / (k + 1)
    return out


def catalan_shifted(N: int):
    # t*C(t) = sum_{k>=1} Catalan(k-1) t^k
    return [Fraction(0)] + [Fraction(comb(2 * k - 2, k - 1), k) for k in range(1, N)]


def fractions(a: AdicCoeff):
    return [Fraction(int(c.numerator), int(c.denominator)) for c in a.coeffs]


def run(cfg: HenselConfig):
    N = cfg.precision
    rows = []
    for d in cfg.degrees:
        start = time.perf_counter()
        P = Poly1([parse_adic("-1 - t", N)] + [0] * (d - 1) + [1], N)
        b = hensel_root(P, AdicCoeff.one(N))
        rows.append((f"(1+t)^(1/{d})", fractions(b) == binomial(Fraction(1, d), N), time.perf_counter() - start))
    start = time.perf_counter()
    t = parse_adic("t", N)
    small = hensel_root_quadratic(Poly1([t, -1, 1], N), AdicCoeff.zero(N), t)
    rows.append(("x^2 - x + t", fractions(small) == catalan_shifted(N), time.perf_counter() - start))
    start = time.perf_counter()
    y = solve_special(t, [AdicCoeff.one(N)])
    rows.append(("1 + y + t*y^2", fractions(-y) == catalan_shifted(N + 1)[1:], time.perf_counter() - start))
    return rows


def cli():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--precision", type=int, default=HenselConfig.precision)
    p.add_argument("--degrees", type=int, nargs="+", default=list(HenselConfig.degrees))
    args = p.parse_args()
    for name, ok, sec in run(HenselConfig(args.precision, tuple(args.degrees))):
        print(f"{name:16s} matches oracle: {ok}  ({sec:.3f}s)")


if __name__ == "__main__":
    cli()
