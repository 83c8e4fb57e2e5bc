import random

from hypothesis import given, settings, strategies as st

from gerber.graded import Form, MultiVector, contract, form_wedge, parity_sign, wedge
from gerber.scalar import Scalar

R = 3
f = Scalar.var(0, 1)


def X(*idx, c=1, rank=R):
    return MultiVector.basis([i - 1 for i in idx], rank, 1, c)


def a(*idx, c=1, rank=R):
    return Form.basis([i - 1 for i in idx], rank, 1, c)


def test_wedge_examples():
    assert wedge(X(1), X(1)).is_zero()
    assert wedge(X(2), X(1)) == -X(1, 2)
    assert wedge(X(1, c=f), X(2)) == X(1, 2, c=f)


def test_form_wedge_examples():
    assert form_wedge(a(1), a(1)).is_zero()
    assert form_wedge(a(2), a(1)) == -a(1, 2)
    assert form_wedge(a(1, c=f), a(2)) == a(1, 2, c=f)


def test_contract_dual_basis():
    u = X(1, 2)
    assert contract(a(1), u) == X(2)
    assert contract(a(2), u) == -X(1)
    assert contract(a(3), u).is_zero()


def test_contract_positions_general():
    # a_j -| X_1 ^ ... ^ X_k = (-1)^(j-1) X_1 ^ ..^j.. ^ X_k
    k = 4
    u = X(1, 2, 3, 4, rank=5)
    for j in range(1, 6):
        expected = X(*[i for i in range(1, k + 1) if i != j], c=parity_sign(j - 1), rank=5) if j <= k else MultiVector.zero(5, 1)
        assert contract(a(j, rank=5), u) == expected


def test_contract_degree_too_high_is_zero():
    assert contract(a(1, 2), X(1)).is_zero()


def test_type_and_rank_errors():
    import pytest

    with pytest.raises(TypeError):
        wedge(X(1), a(1))
    with pytest.raises(ValueError):
        wedge(X(1), X(1, rank=4))


def _element(cls, rng, rank, degree, nvars=1):
    from itertools import combinations

    basis = list(combinations(range(rank), degree))
    coeffs = {I: Scalar({(rng.randint(0, 2),): rng.randint(-3, 3)}, nvars) for I in rng.sample(basis, min(2, len(basis)))}
    return cls(coeffs, rank, nvars)


seeds = st.integers(0, 10**6)


@settings(max_examples=60)
@given(seeds, st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_supercommutative_associative(seed, p, q, r):
    rng = random.Random(seed)
    u, v, w = (_element(MultiVector, rng, 4, d) for d in (p, q, r))
    assert wedge(u, v) == wedge(v, u).scale(parity_sign(p * q))
    assert wedge(wedge(u, v), w) == wedge(u, wedge(v, w))


@settings(max_examples=60)
@given(seeds, st.integers(0, 2), st.integers(0, 2), st.integers(0, 4))
def test_iterated_contraction(seed, p, q, k):
    rng = random.Random(seed)
    w, t = _element(Form, rng, 4, p), _element(Form, rng, 4, q)
    u = _element(MultiVector, rng, 4, k)
    assert contract(t, contract(w, u)) == contract(form_wedge(w, t), u)


@settings(max_examples=60)
@given(seeds, st.integers(0, 3), st.integers(0, 4))
def test_contract_lowers_degree_and_linear(seed, p, k):
    rng = random.Random(seed)
    w = _element(Form, rng, 4, p)
    u, v = _element(MultiVector, rng, 4, k), _element(MultiVector, rng, 4, k)
    g = Scalar({(1,): 2, (0,): -1}, 1)
    out = contract(w, u)
    assert out.is_zero() or out.degrees() == {k - p}
    assert contract(w, u.scale(g) + v) == out.scale(g) + contract(w, v)


@settings(max_examples=40)
@given(seeds, st.integers(0, 4))
def test_euler_identity(seed, k):
    rng = random.Random(seed)
    u = _element(MultiVector, rng, 4, k)
    total = MultiVector.zero(4, 1)
    for i in range(4):
        total = total + wedge(MultiVector.basis((i,), 4, 1), contract(Form.basis((i,), 4, 1), u))
    assert total == u.scale(k)
