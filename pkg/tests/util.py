"""Shared helpers for the test suite: fixture paths and random generators."""

from __future__ import annotations

import pathlib
import random

from algdyn.laurent import LaurentPoly

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def fixture(name: str) -> str:
    """Absolute path of a problem file in the fixtures directory."""
    return str(FIXTURES / name)


def random_poly(
    rng: random.Random,
    dim: int,
    *,
    max_terms: int = 4,
    max_exp: int = 3,
    max_coeff: int = 9,
    allow_zero: bool = False,
    laurent: bool = True,
) -> LaurentPoly:
    """Random Laurent polynomial with bounded support and coefficients."""
    lo = -max_exp if laurent else 0
    while True:
        n_terms = rng.randint(0 if allow_zero else 1, max_terms)
        terms = {}
        for _ in range(n_terms):
            exps = tuple(rng.randint(lo, max_exp) for _ in range(dim))
            coeff = rng.randint(-max_coeff, max_coeff)
            if coeff:
                terms[exps] = terms.get(exps, 0) + coeff
        f = LaurentPoly(dim, terms)
        if allow_zero or not f.is_zero():
            return f


def random_nonzero_poly(rng: random.Random, dim: int, **kwargs) -> LaurentPoly:
    return random_poly(rng, dim, allow_zero=False, **kwargs)
