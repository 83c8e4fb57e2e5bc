import json
import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from gerber import registry
from gerber.algebroid import AlgebroidSpec, differential
from gerber.bv import GeneratingOperator, extend
from gerber.graded import Form, contract
from gerber.homology import (
    BaseDimensionError,
    NotFlatError,
    StarOperator,
    betti,
    boundary,
    chain_matrices,
    cochain_matrices,
    duality_check,
    dw_contraction_identity,
    matrices_to_json,
    star,
    star_diagram_check,
)
from gerber.linalg import matmul
from gerber.sampling import random_form, random_multivector, random_scalar
from gerber.scalar import Scalar

import oracles


def flat(name):
    return GeneratingOperator.from_spec(registry.get(name)[0])


heis = flat("heisenberg")
aff = flat("aff1")
curved = GeneratingOperator.from_spec(*registry.get("tangent-r2-curved"))


def conjugated(spec, rng):
    """The same Lie algebra in a random rational basis (a fresh validated point algebroid)."""
    n = spec.rank
    while True:
        P = sympy.Matrix(n, n, lambda i, j: rng.randint(-2, 2))
        if P.det() != 0:
            break
    Q = P.inv()
    c = oracles.structure_constants(spec)
    structure = {}
    for a, b in combinations(range(n), 2):
        vec = [sympy.Rational(0)] * n
        for i in range(n):
            for j in range(n):
                coeff = P[a, i] * P[b, j]
                if not coeff:
                    continue
                for k in range(n):
                    if c[i][j][k]:
                        for m in range(n):
                            vec[m] += coeff * sympy.Rational(c[i][j][k].numerator, c[i][j][k].denominator) * Q[k, m]
        structure[(a, b)] = tuple(Fraction(int(v.p), int(v.q)) for v in vec)
    return AlgebroidSpec(n, structure=structure, name=spec.name + "-conj")


def test_boundary_examples():
    s = heis.spec
    assert boundary(heis, s.monomial((0, 1)), 2) == s.frame_section(2)
    assert boundary(heis, s.function(Scalar.const(3)), 0).is_zero()
    assert boundary(aff, aff.spec.frame_section(0), 1) == aff.spec.function(Scalar.const(-1))
    with pytest.raises(ValueError):
        boundary(heis, s.frame_section(0) + s.top())
    with pytest.raises(ValueError):
        boundary(heis, s.frame_section(0), 2)


@pytest.mark.parametrize("name", list(registry.FLAT_NAMES))
def test_boundary_squares_to_zero_and_sign(name):
    op = flat(name)
    spec = op.spec
    n = spec.rank
    for k in range(n + 1):
        for I in combinations(range(n), k):
            u = spec.monomial(I)
            if k:
                assert boundary(op, boundary(op, u, k), k - 1).is_zero()
            assert boundary(op, u, k) == extend(op, u).scale((-1) ** (n - k))


def test_star_examples():
    tan, _ = registry.get("tangent-r2")
    s = StarOperator(tan)
    assert star(s, Form.scalar(Scalar.one(2), 2)) == tan.top()
    assert star(s, tan.form_monomial((0,))) == tan.frame_section(1)
    assert star(s, tan.form_monomial((0, 1))) == tan.function(Scalar.one(2))
    with pytest.raises(ValueError):
        star(s, heis.spec.form_monomial((0,)))


def test_star_diagram_examples():
    s = heis.spec
    assert star_diagram_check(heis, Form.scalar(Scalar.one(0), 3)).is_zero()
    assert extend(heis, star(StarOperator(s), s.form_monomial((2,)))) == -s.frame_section(2)
    assert star_diagram_check(heis, s.form_monomial((2,))).is_zero()
    with pytest.raises(ValueError):
        star_diagram_check(curved, curved.spec.form_monomial((0,)))


@pytest.mark.parametrize("name", list(registry.FLAT_NAMES))
def test_star_diagram_all_frame_forms(name):
    op = flat(name)
    spec = op.spec
    for k in range(spec.rank + 1):
        for J in combinations(range(spec.rank), k):
            assert star_diagram_check(op, spec.form_monomial(J)).is_zero()


def test_star_diagram_polynomial_forms():
    op = flat("tangent-r2")
    rng = random.Random(2)
    for _ in range(20):
        w = random_form(rng, op.spec, rng.randint(0, 2))
        assert star_diagram_check(op, w).is_zero()


@pytest.mark.parametrize("base", ["heisenberg", "sl2", "aff1"])
def test_star_diagram_random_point_algebroids(base):
    rng = random.Random(len(base))
    for _ in range(3):
        spec = conjugated(registry.get(base)[0], rng)
        assert spec.validation.ok
        op = GeneratingOperator.from_spec(spec)
        for k in range(spec.rank + 1):
            w = random_form(rng, spec, k)
            assert star_diagram_check(op, w).is_zero()


def test_dw_examples():
    s = heis.spec
    assert dw_contraction_identity(heis, s.form_monomial((0,)), s.top()).is_zero()
    c = curved.spec
    u = c.top(Scalar.var(0, 2))
    assert dw_contraction_identity(curved, c.form_monomial((0,)), u).is_zero()
    with pytest.raises(ValueError):
        dw_contraction_identity(heis, s.form_monomial((0, 1)), s.frame_section(0))


def test_dw_degree_zero_form():
    rng = random.Random(3)
    for op in (curved, flat("tangent-r2")):
        spec = op.spec
        for _ in range(20):
            f = random_scalar(rng, 2)
            u = random_multivector(rng, spec, rng.randint(1, 2))
            df = differential(spec, Form.scalar(f, 2))
            assert contract(df, u) == extend(op, u).scale(f) - extend(op, u.scale(f))
            assert dw_contraction_identity(op, Form.scalar(f, 2), u).is_zero()


@pytest.mark.parametrize("name", list(registry.NAMES))
def test_dw_random(name):
    op = GeneratingOperator.from_spec(*registry.get(name))
    rng = random.Random(17)
    n = op.spec.rank
    for _ in range(15):
        q = rng.randint(1, n)
        p = rng.randint(0, q - 1)
        w = random_form(rng, op.spec, p)
        u = random_multivector(rng, op.spec, q)
        assert dw_contraction_identity(op, w, u).is_zero()


EXPECTED = {
    "heisenberg": ((1, 2, 2, 1), (1, 2, 2, 1)),
    "aff1": ((0, 1, 1), (1, 1, 0)),
    "sl2": ((1, 0, 0, 1), (1, 0, 0, 1)),
    "abelian-n3": ((1, 3, 3, 1), (1, 3, 3, 1)),
    "abelian-n2": ((1, 2, 1), (1, 2, 1)),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_betti_tables(name):
    spec, _ = registry.get(name)
    hom, coh = EXPECTED[name]
    assert betti(spec, "homology")[0].dims == hom
    assert betti(spec, "cohomology")[0].dims == coh
    assert oracles.betti_by_sympy(oracles.structure_constants(spec)) == (hom, coh)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_matrices_match_oracle_and_compose(name):
    spec, _ = registry.get(name)
    c = oracles.structure_constants(spec)
    hcx = chain_matrices(GeneratingOperator.from_spec(spec))
    ccx = cochain_matrices(spec)
    n = spec.rank
    for k in range(1, n + 1):
        assert hcx.matrices[k] == oracles.boundary_matrix(c, k)
    for k in range(n):
        assert ccx.matrices[k] == oracles.coboundary_matrix(c, k)
    for k in range(2, n + 1):
        assert not any(any(r) for r in matmul(hcx.matrices[k - 1], hcx.matrices[k]))
    for k in range(n - 1):
        assert not any(any(r) for r in matmul(ccx.matrices[k + 1], ccx.matrices[k]))


def test_betti_errors():
    with pytest.raises(BaseDimensionError, match="base dimension 0"):
        betti(registry.get("tangent-r2")[0])
    ab, _ = registry.get("abelian-n2")
    # constant theta on an abelian algebra is flat, and D X_i = -theta_i makes the complex acyclic;
    # on heisenberg theta_3 != 0 is curved
    assert betti(GeneratingOperator.from_spec(ab, (1, 2)))[0].dims == (0, 0, 0)
    with pytest.raises(NotFlatError):
        betti(GeneratingOperator.from_spec(heis.spec, (0, 0, 1)))
    with pytest.raises(ValueError):
        betti(ab, "sideways")


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_duality(name):
    report = duality_check(registry.get(name)[0])
    assert report.passed, report.witness_failures
    hom, coh = EXPECTED[name]
    assert report.to_json() == {"pass": True, "homology": list(hom), "cohomology": list(coh), "witness_failures": []}


def test_duality_random_point_algebroids():
    rng = random.Random(4)
    for base in ("heisenberg", "aff1", "sl2"):
        spec = conjugated(registry.get(base)[0], rng)
        report = duality_check(spec)
        assert report.passed
        assert (report.homology, report.cohomology) == EXPECTED[base]


def test_matrices_json_is_stable():
    _, cx = betti(registry.get("aff1")[0])
    doc = matrices_to_json(cx)
    # d~(e1) = 1 with the sign (-1)^(2-1); d~(e1 ^ e2) = 0
    assert doc == {"1": [["-1", "0"]], "2": [["0"], ["0"]]}
    assert json.dumps(doc, sort_keys=True) == json.dumps(matrices_to_json(cx), sort_keys=True)
