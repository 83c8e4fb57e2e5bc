"""Seeded random Scalars, multivectors and forms for randomized checks."""

from __future__ import annotations

import os
import random
from fractions import Fraction
from itertools import product

from .graded import Form, MultiVector, frame_monomials
from .scalar import Scalar

DEFAULT_MAX_DEGREE = 3


def max_degree_from_env() -> int:
    raw = os.environ.get("GERBER_MAX_DEGREE")
    if raw is None:
        return DEFAULT_MAX_DEGREE
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"GERBER_MAX_DEGREE must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError("GERBER_MAX_DEGREE must be non-negative")
    return value


def random_scalar(rng: random.Random, nvars: int, max_degree: int | None = None,
                  max_terms: int = 3, nonzero: bool = True) -> Scalar:
    if max_degree is None:
        max_degree = max_degree_from_env()
    exps = [e for e in product(range(max_degree + 1), repeat=nvars) if sum(e) <= max_degree]
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            num = rng.randint(-5, 5)
            den = rng.choice((1, 1, 1, 2, 3))
            exp = rng.choice(exps)
            terms[exp] = terms.get(exp, 0) + Fraction(num, den)
        s = Scalar(terms, nvars)
        if s or not nonzero:
            return s


def _random_graded(cls, rng, rank, nvars, degree, max_degree, max_terms):
    basis = frame_monomials(rank, degree)
    if not basis:
        return cls.zero(rank, nvars)
    coeffs = {}
    for I in rng.sample(basis, rng.randint(1, min(max_terms, len(basis)))):
        coeffs[I] = random_scalar(rng, nvars, max_degree)
    return cls(coeffs, rank, nvars)


def random_multivector(rng: random.Random, spec, degree: int, max_degree: int | None = None,
                       max_terms: int = 3) -> MultiVector:
    """A random homogeneous multivector of the given degree over ``spec``."""
    return _random_graded(MultiVector, rng, spec.rank, spec.nvars, degree, max_degree, max_terms)


def random_form(rng: random.Random, spec, degree: int, max_degree: int | None = None,
                max_terms: int = 3) -> Form:
    return _random_graded(Form, rng, spec.rank, spec.nvars, degree, max_degree, max_terms)
