"""Seeded random elements for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import Algebra, Element


def random_scalar(field, rng: random.Random, size: int = 5):
    if field.kind == "prime":
        return rng.randrange(field.p)
    num = rng.randint(-size, size)
    den = rng.choice((1, 1, 1, 2, 3))
    return Fraction(num, den)


def random_element(alg: Algebra, rng: random.Random, max_degree: int = 3, terms: int = 3,
                   parity: int | None = None, degree: int | None = None) -> Element:
    """Sum of up to ``terms`` random basis monomials with random coefficients.

    ``parity`` and ``degree`` restrict to a homogeneous component.
    """
    degrees = [degree] if degree is not None else list(range(max_degree + 1))
    pool = [k for d in degrees for k in alg.basis(d)
            if parity is None or alg.parity(k) == parity]
    if not pool:
        return alg.zero()
    out: dict = {}
    for _ in range(rng.randint(1, terms)):
        k = rng.choice(pool)
        out[k] = out.get(k, 0) + random_scalar(alg.field, rng)
    return Element(alg, out)
