from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gerber.scalar import Scalar, partial_derive, scalar_add, scalar_mul

x = Scalar.var(0, 2)
y = Scalar.var(1, 2)


def scalars(nvars=2, max_deg=3):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(exps, coeffs, max_size=4).map(lambda t: Scalar(t, nvars))


def test_add_examples():
    assert scalar_add(x + 1, -x) == Scalar.one(2)
    p = x * x * y
    assert p + Scalar.zero(2) == p
    assert scalar_add(p, p) == 2 * p
    assert (p + p).terms == {(2, 1): Fraction(2)}


def test_mul_examples():
    assert scalar_mul(x + 1, x - 1) == x**2 - 1
    assert scalar_mul(x, Scalar.zero(2)).is_zero()
    assert scalar_mul(Fraction(1, 2) * x, 2 * y) == x * y


def test_partial_examples():
    assert partial_derive(x**2 * y, 0) == 2 * x * y
    assert partial_derive(Scalar.const(7, 2), 1).is_zero()
    assert partial_derive(x * y + y**2, 0) == y


def test_errors():
    with pytest.raises(ValueError):
        Scalar.var(0, 1) + Scalar.var(0, 2)
    with pytest.raises(ValueError):
        Scalar.var(0, 1) * Scalar.var(0, 2)
    with pytest.raises(IndexError):
        x.diff(2)


def test_render_order():
    p = Fraction(3, 2) * x**2 * y - y + 1
    assert p.render(["x", "y"]) == "3/2*x^2*y - y + 1"
    assert Scalar.zero(2).render(["x", "y"]) == "0"
    assert (-x).render(["x", "y"]) == "-x"


def test_zero_variable_ring():
    c = Scalar.const(Fraction(-7, 3))
    assert c.render() == "-7/3"
    assert c.constant_value() == Fraction(-7, 3)


@given(scalars(), scalars(), scalars())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(scalars(), scalars(), st.integers(0, 1))
def test_leibniz(p, q, v):
    assert (p * q).diff(v) == p.diff(v) * q + p * q.diff(v)


@given(scalars())
def test_canonical_cancellation(p):
    s = p + (-p)
    assert s.terms == {}
    assert hash(p) == hash(Scalar(p.terms, 2))
