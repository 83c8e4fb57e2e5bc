"""Lie algebroid data in a global frame, the Schouten bracket, and d.

An algebroid of rank n over m base variables is given by

* an anchor, an n x m matrix: ``a(X_i) = sum_mu anchor[i][mu] d/dx_mu``;
* structure functions: ``[X_i, X_j] = sum_k c_ij^k X_k`` for i < j.

Brackets of arbitrary sections are derived from these by the Leibniz rules
and never stored.  :func:`validate` checks the Jacobi identity and the
anchor homomorphism on frame triples and pairs only; both defects are
C-infinity multilinear once the Leibniz rule is imposed, so the frame
checks cover all sections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from .graded import Form, MultiVector, frame_monomials, pair, parity_sign, wedge
from .scalar import Scalar


class InvalidSpecError(ValueError):
    """Raised when an algebroid fails validation or is malformed."""


@dataclass(frozen=True)
class Violation:
    identity: str
    witness: tuple
    residual: Scalar


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True, eq=False)
class AlgebroidSpec:
    """Frame presentation of a Lie algebroid ``(A, a, [,]_A)``.

    ``structure`` maps 0-based pairs ``(i, j)`` with ``i < j`` to a length-n
    tuple of Scalars; missing pairs are zero.
    """

    rank: int
    base_vars: tuple = ()
    anchor: tuple = ()
    structure: Mapping = field(default_factory=dict)
    frame: tuple = ()
    coframe: tuple = ()
    name: str = ""

    def __post_init__(self):
        n, m = self.rank, len(self.base_vars)
        if n < 0:
            raise InvalidSpecError("rank must be non-negative")
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        set_("base_vars", tuple(self.base_vars))
        set_("frame", tuple(self.frame) or tuple(f"X{i + 1}" for i in range(n)))
        set_("coframe", tuple(self.coframe) or tuple(f"a{i + 1}" for i in range(n)))
        if len(self.frame) != n or len(self.coframe) != n:
            raise InvalidSpecError("frame and coframe must each have `rank` names")
        names = list(self.base_vars) + list(self.frame) + list(self.coframe)
        if len(set(names)) != len(names):
            raise InvalidSpecError("variable, frame and coframe names must be distinct")

        anchor = tuple(tuple(self._lift(c) for c in row) for row in (self.anchor or [()] * n))
        if not self.anchor:
            anchor = tuple(tuple(Scalar.zero(m) for _ in range(m)) for _ in range(n))
        if len(anchor) != n or any(len(row) != m for row in anchor):
            raise InvalidSpecError(f"anchor must be a {n}x{m} matrix")
        set_("anchor", anchor)

        structure = {}
        for key, vec in dict(self.structure).items():
            i, j = key
            if not (0 <= i < j < n):
                raise InvalidSpecError(f"structure key {key} must satisfy 0 <= i < j < rank")
            vec = tuple(self._lift(c) for c in vec)
            if len(vec) != n:
                raise InvalidSpecError(f"structure vector for {key} must have length {n}")
            if any(vec):
                structure[(i, j)] = vec
        set_("structure", structure)
        set_("_bracket_cache", {})

    def _lift(self, c) -> Scalar:
        m = len(self.base_vars)
        if isinstance(c, Scalar):
            if c.nvars != m:
                raise InvalidSpecError(f"entry over {c.nvars} variables, expected {m}")
            return c
        return Scalar.const(c, m)

    @property
    def nvars(self) -> int:
        return len(self.base_vars)

    def zero_scalar(self) -> Scalar:
        return Scalar.zero(self.nvars)

    def zero(self) -> MultiVector:
        return MultiVector.zero(self.rank, self.nvars)

    def zero_form(self) -> Form:
        return Form.zero(self.rank, self.nvars)

    def frame_section(self, i: int, coeff=1) -> MultiVector:
        return MultiVector.basis((i,), self.rank, self.nvars, coeff)

    def monomial(self, indices, coeff=1) -> MultiVector:
        return MultiVector.basis(tuple(indices), self.rank, self.nvars, coeff)

    def form_monomial(self, indices, coeff=1) -> Form:
        return Form.basis(tuple(indices), self.rank, self.nvars, coeff)

    def top(self, coeff=1) -> MultiVector:
        return MultiVector.basis(range(self.rank), self.rank, self.nvars, coeff)

    def function(self, f) -> MultiVector:
        return MultiVector.scalar(self._lift(f), self.rank)

    def structure_vector(self, i: int, j: int) -> tuple:
        """Coefficients of ``[X_i, X_j]`` for any ordered pair."""
        if i == j:
            return tuple(self.zero_scalar() for _ in range(self.rank))
        if i < j:
            return self.structure.get((i, j)) or tuple(self.zero_scalar() for _ in range(self.rank))
        return tuple(-c for c in self.structure_vector(j, i))

    def anchor_derivation(self, i: int, f: Scalar) -> Scalar:
        """``a(X_i) f``."""
        total = self.zero_scalar()
        for mu, coeff in enumerate(self.anchor[i]):
            if coeff:
                total = total + coeff * f.diff(mu)
        return total

    @cached_property
    def validation(self) -> ValidationReport:
        return validate(self)

    def require_valid(self):
        if not self.validation.ok:
            v = self.validation.violations[0]
            raise InvalidSpecError(
                f"algebroid {self.name or '<unnamed>'} is invalid: {v.identity} fails at {v.witness}"
            )


# validation ------------------------------------------------------------


def validate(spec: AlgebroidSpec) -> ValidationReport:
    """Check the Jacobi identity on frame triples and the anchor homomorphism on pairs.

    Both checks are expanded directly in terms of structure functions and
    anchor derivatives, without going through :func:`schouten_bracket`.
    """
    n, m = spec.rank, spec.nvars
    violations = []

    def bracket_vec_with_frame(vec, k):
        # [sum_l v_l X_l, X_k] = sum_l (v_l [X_l, X_k] - (a(X_k) v_l) X_l)
        out = [spec.zero_scalar() for _ in range(n)]
        for l, v in enumerate(vec):
            if not v:
                continue
            for r, c in enumerate(spec.structure_vector(l, k)):
                out[r] = out[r] + v * c
            out[l] = out[l] - spec.anchor_derivation(k, v)
        return out

    for i, j, k in combinations(range(n), 3):
        total = [spec.zero_scalar() for _ in range(n)]
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for r, val in enumerate(bracket_vec_with_frame(spec.structure_vector(a, b), c)):
                total[r] = total[r] + val
        for r, val in enumerate(total):
            if val:
                violations.append(Violation("jacobi", (i, j, k, r), val))

    for i, j in combinations(range(n), 2):
        c = spec.structure_vector(i, j)
        for mu in range(m):
            # a([X_i, X_j]) component mu
            lhs = spec.zero_scalar()
            for k, ck in enumerate(c):
                lhs = lhs + ck * spec.anchor[k][mu]
            # [a(X_i), a(X_j)] component mu, as vector fields on the base
            rhs = spec.anchor_derivation(i, spec.anchor[j][mu]) - spec.anchor_derivation(j, spec.anchor[i][mu])
            if lhs != rhs:
                violations.append(Violation("anchor", (i, j, mu), lhs - rhs))
    return ValidationReport(tuple(violations))


# anchor and bracket ----------------------------------------------------


def anchor_apply(spec: AlgebroidSpec, X: MultiVector, f: Scalar) -> Scalar:
    """``a(X) f`` for a section X of degree <= 1 (the degree-0 part acts by zero)."""
    if X.degrees() - {0, 1}:
        raise ValueError("anchor_apply needs a section of degree <= 1")
    total = spec.zero_scalar()
    for key, g in X.items():
        if len(key) == 1:
            total = total + g * spec.anchor_derivation(key[0], f)
    return total


def _frame_scalar_bracket(spec: AlgebroidSpec, I: tuple, g: Scalar) -> MultiVector:
    """``[X_I, g] = sum_r (-1)^(p-1-r) (a(X_{i_r}) g) X_{I minus i_r}``."""
    p = len(I)
    out = spec.zero()
    for r, i in enumerate(I):
        ag = spec.anchor_derivation(i, g)
        if ag:
            rest = I[:r] + I[r + 1:]
            out = out + spec.monomial(rest, ag * parity_sign(p - 1 - r))
    return out


def _frame_bracket(spec: AlgebroidSpec, I: tuple, J: tuple) -> MultiVector:
    """``[X_I, X_J]`` for pure frame monomials, memoised on the spec."""
    cache = spec._bracket_cache
    key = (I, J)
    if key in cache:
        return cache[key]
    p, q = len(I), len(J)
    if p == 0 or q == 0:
        result = spec.zero()
    elif p == 1 and q == 1:
        vec = spec.structure_vector(I[0], J[0])
        result = MultiVector({(k,): c for k, c in enumerate(vec)}, spec.rank, spec.nvars)
    elif q >= 2:
        # [X_I, X_j ^ V] = [X_I, X_j] ^ V + (-1)^(p-1) X_j ^ [X_I, V]
        head, tail = J[:1], J[1:]
        result = wedge(_frame_bracket(spec, I, head), spec.monomial(tail)) + wedge(
            spec.monomial(head), _frame_bracket(spec, I, tail)
        ).scale(parity_sign(p - 1))
    else:
        # q == 1, p >= 2: [X_I, X_j] = -[X_j, X_I]
        result = -_frame_bracket(spec, J, I)
    cache[key] = result
    return result


def _monomial_bracket(spec: AlgebroidSpec, I: tuple, f: Scalar, J: tuple, g: Scalar) -> MultiVector:
    p, q = len(I), len(J)
    if p == 0 and q == 0:
        return spec.zero()
    if q == 0:
        return _frame_scalar_bracket(spec, I, g).scale(f)
    if p == 0:
        return _frame_scalar_bracket(spec, J, f).scale(g * parity_sign(q))
    XI, XJ = spec.monomial(I), spec.monomial(J)
    # [u, g X_J] = [u, g] X_J + g [u, X_J];   [f X_I, g] = f [X_I, g]
    first = wedge(_frame_scalar_bracket(spec, I, g), XJ).scale(f)
    # [f X_I, X_J] = -(-1)^((p-1)(q-1)) ([X_J, f] X_I + f [X_J, X_I])
    swap = -parity_sign((p - 1) * (q - 1))
    inner = wedge(_frame_scalar_bracket(spec, J, f), XI) + _frame_bracket(spec, J, I).scale(f)
    return first + inner.scale(g * swap)


def _bracket(spec: AlgebroidSpec, u: MultiVector, v: MultiVector) -> MultiVector:
    out = spec.zero()
    for I, f in u.items():
        for J, g in v.items():
            out = out + _monomial_bracket(spec, I, f, J, g)
    return out


def schouten_bracket(spec: AlgebroidSpec, u: MultiVector, v: MultiVector) -> MultiVector:
    """The degree -1 Schouten bracket ``[u, v]`` on Gamma(^* A), bilinear over mixed degrees."""
    spec.require_valid()
    _check_shape(spec, u)
    _check_shape(spec, v)
    return _bracket(spec, u, v)


def lie_derivative(spec: AlgebroidSpec, X: MultiVector, u: MultiVector) -> MultiVector:
    """``L_X u = [X, u]`` for a degree-1 section X."""
    if X and X.degrees() != {1}:
        raise ValueError("lie_derivative needs a degree-1 section")
    return schouten_bracket(spec, X, u)


def _check_shape(spec, u):
    if u.rank != spec.rank or u.nvars != spec.nvars:
        raise ValueError(
            f"element of rank {u.rank} over {u.nvars} variables does not fit algebroid "
            f"of rank {spec.rank} over {spec.nvars}"
        )


# coboundary ------------------------------------------------------------


def _evaluate(spec: AlgebroidSpec, w: Form, args: MultiVector) -> Scalar:
    return pair(w, args)


def differential(spec: AlgebroidSpec, w: Form) -> Form:
    """The Lie algebroid coboundary, evaluated on every frame tuple.

    ``(dw)(X_0..X_k) = sum_r (-1)^r a(X_r) w(..^r..)
                     + sum_{r<s} (-1)^(r+s) w([X_r, X_s], ..^r..^s..)``
    """
    spec.require_valid()
    _check_shape(spec, w)
    out: dict = {}
    for k in sorted(w.degrees()):
        wk = w.part(k)
        for I in frame_monomials(spec.rank, k + 1):
            total = spec.zero_scalar()
            for r, i in enumerate(I):
                rest = I[:r] + I[r + 1:]
                total = total + spec.anchor_derivation(i, wk.coefficient(rest)) * parity_sign(r)
            for r, s in combinations(range(len(I)), 2):
                rest = I[:r] + I[r + 1:s] + I[s + 1:]
                br = _frame_bracket(spec, (I[r],), (I[s],))
                total = total + _evaluate(spec, wk, wedge(br, spec.monomial(rest))) * parity_sign(r + s)
            if total:
                out[I] = out.get(I, spec.zero_scalar()) + total
    return Form(out, spec.rank, spec.nvars)
