"""Connections on the top power, the induced generator D, and its extension.

A :class:`TopConnection` is stored by its values on the frame top section
``L = X_1 ^ ... ^ X_n``: ``nabla_{X_i} L = theta_i L``.  The induced
operator is ``D f = 0`` on functions and ``(D X) L = L_X L - nabla_X L`` on
sections; :func:`extend` pushes it to all degrees by splitting off the
lowest frame factor::

    D~(X ^ V) = -[X, V] + (D X) V - X ^ D~ V
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .algebroid import AlgebroidSpec, _bracket, _check_shape, anchor_apply, schouten_bracket
from .graded import MultiVector, frame_monomials, parity_sign, sort_sign, wedge
from .scalar import Scalar


@dataclass(frozen=True, eq=False)
class TopConnection:
    spec: AlgebroidSpec
    theta: tuple = ()

    def __post_init__(self):
        theta = self.theta or tuple(self.spec.zero_scalar() for _ in range(self.spec.rank))
        theta = tuple(self.spec._lift(t) for t in theta)
        if len(theta) != self.spec.rank:
            raise ValueError(f"theta must have {self.spec.rank} entries, got {len(theta)}")
        object.__setattr__(self, "theta", theta)

    def is_trivial(self) -> bool:
        return not any(self.theta)

    def theta_of(self, X: MultiVector) -> Scalar:
        """``sum_i f_i theta_i`` for ``X = sum_i f_i X_i``."""
        total = self.spec.zero_scalar()
        for key, f in X.items():
            if len(key) == 1:
                total = total + f * self.theta[key[0]]
        return total

    def covariant(self, X: MultiVector, section: MultiVector) -> MultiVector:
        """``nabla_X (g L) = (a(X) g + g theta(X)) L``."""
        _require_degree(X, 1, "direction")
        if section and section.degrees() != {self.spec.rank}:
            raise ValueError("connections act on top-degree sections only")
        g = section.top_coefficient()
        return self.spec.top(anchor_apply(self.spec, X, g) + g * self.theta_of(X))


def _require_degree(u: MultiVector, k: int, what: str = "input"):
    if u and u.degrees() != {k}:
        raise ValueError(f"{what} must be homogeneous of degree {k}, got degrees {sorted(u.degrees())}")


def _homogeneous_degree(u: MultiVector) -> int:
    if not u.is_homogeneous():
        raise ValueError(f"input must be homogeneous, got degrees {sorted(u.degrees())}")
    return u.degree()


def d_on_generators(conn: TopConnection, X: MultiVector, section: MultiVector | None = None) -> Scalar:
    """D on degree <= 1, read off from ``(D X) L = L_X L - nabla_X L``.

    ``section`` defaults to the frame top section; any nonzero constant
    multiple of it (a unit of the polynomial model) gives the same D.
    """
    spec = conn.spec
    spec.require_valid()
    if X.degrees() - {0, 1}:
        raise ValueError("d_on_generators takes sections of degree <= 1")
    lam = spec.top() if section is None else section
    scale = lam.top_coefficient()
    if set(lam.degrees()) != {spec.rank} or not scale.is_constant():
        raise ValueError("section must be a nonzero constant multiple of the frame top section")
    X1 = X.part(1)
    if not X1:
        return spec.zero_scalar()
    value = (schouten_bracket(spec, X1, lam) - conn.covariant(X1, lam)).top_coefficient()
    return value * (1 / scale.constant_value())


class GeneratingOperator:
    """D together with its extension D~; the frame values ``D(X_i)`` are computed eagerly."""

    def __init__(self, connection: TopConnection):
        self.connection = connection
        self.frame_d = tuple(
            d_on_generators(connection, connection.spec.frame_section(i)) for i in range(connection.spec.rank)
        )

    @classmethod
    def from_spec(cls, spec: AlgebroidSpec, theta: Sequence | None = None) -> "GeneratingOperator":
        return cls(TopConnection(spec, tuple(theta or ())))

    @property
    def spec(self) -> AlgebroidSpec:
        return self.connection.spec

    def d1(self, X: MultiVector) -> Scalar:
        """``D(sum f_i X_i) = sum_i (f_i D(X_i) - a(X_i) f_i)``."""
        spec = self.spec
        total = spec.zero_scalar()
        for key, f in X.items():
            if len(key) == 1:
                i = key[0]
                total = total + f * self.frame_d[i] - spec.anchor_derivation(i, f)
        return total

    def __call__(self, u: MultiVector) -> MultiVector:
        return extend(self, u)

    def __repr__(self):
        return f"GeneratingOperator({self.spec.name or 'algebroid'}, theta={[t.render() for t in self.connection.theta]})"


def _extend_term(op: GeneratingOperator, I: tuple, f: Scalar) -> MultiVector:
    spec = op.spec
    k = len(I)
    if k == 0:
        return spec.zero()
    if k == 1:
        return spec.function(op.d1(spec.frame_section(I[0], f)))
    X = spec.monomial(I[:1])
    V = spec.monomial(I[1:], f)
    return (
        -_bracket(spec, X, V)
        + V.scale(op.frame_d[I[0]])
        - wedge(X, _extend(op, V))
    )


def _extend(op: GeneratingOperator, u: MultiVector) -> MultiVector:
    out = op.spec.zero()
    for I, f in u.items():
        out = out + _extend_term(op, I, f)
    return out


def extend(op: GeneratingOperator, u: MultiVector) -> MultiVector:
    """The degree -1 extension D~ applied to ``u`` (linear over mixed degrees)."""
    op.spec.require_valid()
    _check_shape(op.spec, u)
    return _extend(op, u)


Splitter = Callable[[tuple], tuple]


def random_splitter(rng: random.Random) -> Splitter:
    """A splitter choosing a random nonempty proper sub-tuple and coefficient side."""

    def choose(I):
        k = len(I)
        size = rng.randint(1, k - 1)
        left = tuple(sorted(rng.sample(I, size)))
        right = tuple(i for i in I if i not in left)
        return left, right, rng.random() < 0.5

    return choose


def extend_factored(op: GeneratingOperator, u: MultiVector, choose: Splitter) -> MultiVector:
    """D~ computed from an arbitrary factorisation of each monomial.

    ``choose(I)`` returns ``(left, right, coeff_left)``: a partition of the
    index tuple into two nonempty sorted parts and whether the coefficient
    rides on the left factor.  Then ``D~(a b) = (-1)^|a| [a, b] + D~a b +
    (-1)^|a| a D~b`` is applied, recursing with the same chooser.
    """
    spec = op.spec
    spec.require_valid()
    out = spec.zero()
    for I, f in u.items():
        if len(I) <= 1:
            out = out + _extend_term(op, I, f)
            continue
        left, right, coeff_left = choose(I)
        sign, merged = sort_sign(left + right)
        if merged != I or sign == 0:
            raise ValueError(f"splitter returned {left}, {right} which do not partition {I}")
        one = spec.zero_scalar() + 1
        a = spec.monomial(left, f if coeff_left else one)
        b = spec.monomial(right, one if coeff_left else f)
        s = parity_sign(len(left))
        da = extend_factored(op, a, choose)
        db = extend_factored(op, b, choose)
        term = _bracket(spec, a, b).scale(s) + wedge(da, b) + wedge(a, db).scale(s)
        out = out + term.scale(sign)
    return out


# checks ----------------------------------------------------------------


def generator_check(op: GeneratingOperator, a: MultiVector, b: MultiVector) -> MultiVector:
    """``[a, b] - (-1)^|a| (D~(a b) - D~a b - (-1)^|a| a D~b)``."""
    spec = op.spec
    p = _homogeneous_degree(a)
    _homogeneous_degree(b)
    s = parity_sign(p)
    rhs = extend(op, wedge(a, b)) - wedge(extend(op, a), b) - wedge(a, extend(op, b)).scale(s)
    return schouten_bracket(spec, a, b) - rhs.scale(s)


def derivation_check(op: GeneratingOperator, u: MultiVector, v: MultiVector) -> MultiVector:
    """``D~[u, v] - [D~u, v] - (-1)^(|u|-1) [u, D~v]``."""
    spec = op.spec
    p = _homogeneous_degree(u)
    _homogeneous_degree(v)
    br = schouten_bracket(spec, u, v)
    return (
        extend(op, br)
        - schouten_bracket(spec, extend(op, u), v)
        - schouten_bracket(spec, u, extend(op, v)).scale(parity_sign(p - 1))
    )


def dsquared(op: GeneratingOperator, u: MultiVector) -> MultiVector:
    return extend(op, extend(op, u))


def curvature_apply(conn: TopConnection, X: MultiVector, Y: MultiVector, section: MultiVector) -> MultiVector:
    """``R(X, Y) s = nabla_X nabla_Y s - nabla_Y nabla_X s - nabla_[X,Y] s``."""
    spec = conn.spec
    _require_degree(X, 1, "X")
    _require_degree(Y, 1, "Y")
    XY = schouten_bracket(spec, X, Y)
    return (
        conn.covariant(X, conn.covariant(Y, section))
        - conn.covariant(Y, conn.covariant(X, section))
        - conn.covariant(XY, section)
    )


def curvature(conn: TopConnection, X: MultiVector, Y: MultiVector) -> Scalar:
    """The Scalar r with ``R(X, Y) L = r L`` for the frame top section L."""
    conn.spec.require_valid()
    return curvature_apply(conn, X, Y, conn.spec.top()).top_coefficient()


def curvature_vs_dsquared(op: GeneratingOperator, X: MultiVector, Y: MultiVector,
                          section: MultiVector | None = None) -> MultiVector:
    """``R(X, Y) L + X ^ Y ^ D~^2 L``; zero for every generating operator."""
    spec = op.spec
    lam = spec.top() if section is None else section
    lhs = curvature_apply(op.connection, X, Y, lam)
    return lhs + wedge(wedge(X, Y), dsquared(op, lam))


def connection_recovery(op: GeneratingOperator, X: MultiVector, section: MultiVector | None = None) -> MultiVector:
    """``nabla_X L + X ^ D~ L`` for a top-degree section L (frame top by default)."""
    spec = op.spec
    spec.require_valid()
    lam = spec.top() if section is None else section
    if lam and lam.degrees() != {spec.rank}:
        raise ValueError("connection_recovery needs a top-degree section")
    _require_degree(X, 1, "X")
    return op.connection.covariant(X, lam) + wedge(X, extend(op, lam))


@dataclass
class StageResult:
    name: str
    passed: bool
    checked: int
    witness: object = None


@dataclass
class FlatnessReport:
    stages: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        """The implication chain stage 1 => stage 2 => stage 3 holds."""
        s1, s2, s3 = (s.passed for s in self.stages)
        return (not s1 or s2) and (not s2 or s3)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.stages)

    def first_failure(self):
        for k, s in enumerate(self.stages, 1):
            if not s.passed:
                return k
        return None


def flatness_propagation_check(op: GeneratingOperator, rng: random.Random | None = None,
                               samples: int = 20, max_degree: int | None = None) -> FlatnessReport:
    """Run D~^2 on top sections, the frame derivation identity, then D~^2 on random inputs."""
    from .sampling import random_multivector, random_scalar

    rng = rng or random.Random(0)
    spec = op.spec
    n = spec.rank
    report = FlatnessReport()

    tops = [spec.top()] + [spec.top(random_scalar(rng, spec.nvars, max_degree)) for _ in range(samples)]
    witness = next((t for t in tops if dsquared(op, t)), None)
    report.stages.append(StageResult("dsquared on top sections", witness is None, len(tops), witness))

    witness = None
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for i, j in pairs:
        r = derivation_check(op, spec.frame_section(i), spec.frame_section(j))
        if r:
            witness = (i, j, r)
            break
    report.stages.append(StageResult("derivation identity on frame pairs", witness is None, len(pairs), witness))

    witness = None
    for _ in range(samples):
        u = random_multivector(rng, spec, rng.randint(0, n), max_degree)
        if dsquared(op, u):
            witness = u
            break
    report.stages.append(StageResult("dsquared on random sample", witness is None, samples, witness))
    return report


def all_frame_monomials(spec: AlgebroidSpec):
    return [spec.monomial(I) for k in range(spec.rank + 1) for I in frame_monomials(spec.rank, k)]
