import random
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gerber.linalg import in_column_span, matmul, nullspace, rank

entries = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_side=5):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def to_sympy(M):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in M])


def test_small_cases():
    assert rank([]) == 0
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[Fraction(1, 2), 1], [1, Fraction(1, 3)]]) == 2
    assert nullspace([[1, 2], [2, 4]]) == [[-2, 1]]
    assert nullspace([], 2) == [[1, 0], [0, 1]]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy(M):
    assert rank(M) == to_sympy(M).rank()


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_nullspace_is_a_kernel_basis(M):
    ncols = len(M[0])
    basis = nullspace(M, ncols)
    assert len(basis) == ncols - to_sympy(M).rank()
    for v in basis:
        assert all(x == 0 for row in matmul(M, [[c] for c in v]) for x in row)
    if basis:
        assert rank(basis) == len(basis)


def test_in_column_span():
    rng = random.Random(0)
    for _ in range(30):
        M = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(4)]
        coeffs = [rng.randint(-2, 2) for _ in range(3)]
        v = [sum(row[j] * coeffs[j] for j in range(3)) for row in M]
        assert in_column_span(M, v)
    assert not in_column_span([[1], [0]], [0, 1])
