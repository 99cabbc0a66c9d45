"""Shared helpers for the test suite."""

import random

from nahlie.divpow import DividedPowerAlgebra, DPoly


def v2_factorial_direct(n: int) -> int:
    """Independent 2-adic valuation of n! by summing floor(n / 2^j)."""
    total = 0
    p = 2
    while p <= n:
        total += n // p
        p *= 2
    return total


def binomial_parity(a: int, b: int) -> int:
    """C(a+b, a) mod 2 through the factorial valuation, not Lucas."""
    return 1 if v2_factorial_direct(a + b) == v2_factorial_direct(a) + v2_factorial_direct(b) else 0


def random_poly(alg: DividedPowerAlgebra, rng: random.Random, nterms=4, unit=False) -> DPoly:
    terms = {}
    for _ in range(nterms):
        idx = rng.randrange(alg.dim)
        c = rng.randrange(1, alg.K.size)
        terms[idx] = c
    if unit:
        terms[0] = rng.randrange(1, alg.K.size)
    return DPoly(alg, {i: c for i, c in terms.items() if c})


def random_ideal_poly(alg: DividedPowerAlgebra, rng: random.Random, nterms=4) -> DPoly:
    f = random_poly(alg, rng, nterms)
    return f.drop_constant()
