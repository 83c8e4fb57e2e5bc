"""Boundary operator, the star map, and (co)homology over a point.

The boundary on degree k is ``(-1)^(n-k) D~``.  The star map contracts a
form into the frame top section L.  For algebroids over a point (no base
variables) every chain space is a finite-dimensional Q-vector space with
basis the frame monomials in lexicographic order, and Betti numbers are
computed by exact rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import linalg
from .algebroid import AlgebroidSpec, differential
from .bv import GeneratingOperator, extend
from .graded import Form, MultiVector, contract, frame_monomials, parity_sign


class BaseDimensionError(ValueError):
    """Betti numbers need a point base (finite-dimensional chain spaces)."""


class NotFlatError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StarOperator:
    spec: AlgebroidSpec

    @property
    def top(self) -> MultiVector:
        return self.spec.top()

    def __call__(self, w: Form) -> MultiVector:
        return star(self, w)


@dataclass
class ChainComplexMatrices:
    """Matrices of the boundary (or coboundary) per degree, in frame-monomial bases.

    For ``direction == "homology"`` key k holds the matrix of
    ``A^k -> A^(k-1)``; for ``"cohomology"`` key k holds ``C^k -> C^(k+1)``.
    """

    direction: str
    rank: int
    matrices: dict = field(default_factory=dict)


@dataclass(frozen=True)
class BettiTable:
    direction: str
    dims: tuple


@dataclass
class DualityReport:
    passed: bool
    homology: tuple
    cohomology: tuple
    witness_failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "homology": list(self.homology),
            "cohomology": list(self.cohomology),
            "witness_failures": list(self.witness_failures),
        }


def boundary(op: GeneratingOperator, u: MultiVector, k: int | None = None) -> MultiVector:
    """``(-1)^(n-k) D~ u`` for u homogeneous of degree k."""
    if not u.is_homogeneous():
        raise ValueError(f"boundary needs a homogeneous input, got degrees {sorted(u.degrees())}")
    if k is None:
        k = u.degree()
    elif u and u.degree() != k:
        raise ValueError(f"input has degree {u.degree()}, not {k}")
    return extend(op, u).scale(parity_sign(op.spec.rank - k))


def star(s: StarOperator, w: Form) -> MultiVector:
    """``w -| L``."""
    if w.rank != s.spec.rank:
        raise ValueError(f"form of rank {w.rank} does not fit rank {s.spec.rank}")
    return contract(w, s.top)


def star_diagram_check(op: GeneratingOperator, w: Form) -> MultiVector:
    """``D~0 (w -| L) + (-1)^|w| (dw) -| L`` for the trivial connection."""
    if not op.connection.is_trivial():
        raise ValueError("star_diagram_check needs theta = 0 (the connection with L horizontal)")
    spec = op.spec
    s = StarOperator(spec)
    if not w.is_homogeneous():
        raise ValueError("star_diagram_check needs a homogeneous form")
    out = extend(op, star(s, w))
    return out + star(s, differential(spec, w)).scale(parity_sign(w.degree()))


def dw_contraction_identity(op: GeneratingOperator, w: Form, u: MultiVector) -> MultiVector:
    """``dw -| u - w -| D~u + (-1)^|w| D~(w -| u)``, which vanishes for any generator."""
    spec = op.spec
    if not w.is_homogeneous() or not u.is_homogeneous():
        raise ValueError("dw_contraction_identity needs homogeneous inputs")
    p, q = w.degree(), u.degree()
    if u and w and p + 1 > q:
        raise ValueError(f"need |w| + 1 <= |u|, got |w| = {p}, |u| = {q}")
    dw = differential(spec, w)
    return contract(dw, u) - contract(w, extend(op, u)) + extend(op, contract(w, u)).scale(parity_sign(p))


# finite-dimensional complexes ------------------------------------------


def _require_point(spec: AlgebroidSpec):
    if spec.nvars:
        raise BaseDimensionError("Betti computation requires base dimension 0")


def _vector(element, basis):
    return [element.coefficient(I).constant_value() for I in basis]


def chain_matrices(op: GeneratingOperator) -> ChainComplexMatrices:
    """Matrices of the boundary ``A^k -> A^(k-1)`` for k = 1..n."""
    spec = op.spec
    _require_point(spec)
    n = spec.rank
    out = ChainComplexMatrices("homology", n)
    for k in range(1, n + 1):
        src, dst = frame_monomials(n, k), frame_monomials(n, k - 1)
        cols = [_vector(boundary(op, spec.monomial(I), k), dst) for I in src]
        out.matrices[k] = [[cols[c][r] for c in range(len(src))] for r in range(len(dst))]
    return out


def cochain_matrices(spec: AlgebroidSpec) -> ChainComplexMatrices:
    """Matrices of the coboundary ``C^k -> C^(k+1)`` for k = 0..n-1."""
    _require_point(spec)
    n = spec.rank
    out = ChainComplexMatrices("cohomology", n)
    for k in range(n):
        src, dst = frame_monomials(n, k), frame_monomials(n, k + 1)
        cols = [_vector(differential(spec, spec.form_monomial(I)), dst) for I in src]
        out.matrices[k] = [[cols[c][r] for c in range(len(src))] for r in range(len(dst))]
    return out


def _dims(cx: ChainComplexMatrices):
    n = cx.rank
    ranks = {k: linalg.rank(M) for k, M in cx.matrices.items()}
    if cx.direction == "homology":
        return tuple(comb(n, k) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(n + 1))
    return tuple(comb(n, k) - ranks.get(k, 0) - ranks.get(k - 1, 0) for k in range(n + 1))


def is_flat(op: GeneratingOperator) -> bool:
    from .bv import curvature

    spec = op.spec
    return all(
        not curvature(op.connection, spec.frame_section(i), spec.frame_section(j))
        for i in range(spec.rank) for j in range(i + 1, spec.rank)
    )


def betti(op_or_spec, direction: str = "homology"):
    """Exact Betti numbers; returns ``(BettiTable, ChainComplexMatrices)``.

    Homology uses the boundary of the given generating operator, which must
    come from a flat connection; cohomology uses d with trivial coefficients.
    """
    if isinstance(op_or_spec, GeneratingOperator):
        op, spec = op_or_spec, op_or_spec.spec
    else:
        op, spec = None, op_or_spec
    _require_point(spec)
    if direction == "homology":
        if op is None:
            op = GeneratingOperator.from_spec(spec)
        if not is_flat(op):
            raise NotFlatError("homology needs a flat connection")
        cx = chain_matrices(op)
    elif direction == "cohomology":
        cx = cochain_matrices(spec)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return BettiTable(direction, _dims(cx)), cx


def _star_matrix(spec: AlgebroidSpec, form_degree: int):
    s = StarOperator(spec)
    n = spec.rank
    src, dst = frame_monomials(n, form_degree), frame_monomials(n, n - form_degree)
    cols = [_vector(star(s, spec.form_monomial(J)), dst) for J in src]
    return [[cols[c][r] for c in range(len(src))] for r in range(len(dst))]


def _apply(M, v):
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in M]


def duality_check(spec: AlgebroidSpec) -> DualityReport:
    """Compare ``H_k(A, nabla_0)`` with ``H^(n-k)(A)`` and check the star map witnesses it."""
    _require_point(spec)
    spec.require_valid()
    n = spec.rank
    op = GeneratingOperator.from_spec(spec)
    hom, hcx = betti(op, "homology")
    coh, ccx = betti(spec, "cohomology")
    failures = []
    if any(hom.dims[k] != coh.dims[n - k] for k in range(n + 1)):
        failures.append(f"dimension mismatch: homology {list(hom.dims)} vs cohomology {list(coh.dims)}")

    for p in range(n + 1):
        for J in frame_monomials(n, p):
            if star_diagram_check(op, spec.form_monomial(J)):
                failures.append(f"star diagram fails on form {list(J)}")

    for p in range(n + 1):
        k = n - p
        S = _star_matrix(spec, p)
        d = ccx.matrices.get(p)
        cocycles = linalg.nullspace(d, comb(n, p)) if d else [
            [Fraction(int(i == j)) for j in range(comb(n, p))] for i in range(comb(n, p))
        ]
        bd = hcx.matrices.get(k)
        for z in cocycles:
            image = _apply(S, z)
            if bd is not None and any(_apply(bd, image)):
                failures.append(f"star of a degree-{p} cocycle is not a cycle")
        if p >= 1:
            dprev = ccx.matrices[p - 1]
            bnext = hcx.matrices.get(k + 1)
            for c in range(comb(n, p - 1)):
                image = _apply(S, [row[c] for row in dprev])
                if bnext is None:
                    ok = not any(image)
                else:
                    ok = linalg.in_column_span(bnext, image)
                if not ok:
                    failures.append(f"star of a degree-{p} coboundary is not a boundary")
    return DualityReport(not failures, hom.dims, coh.dims, failures)


def matrices_to_json(cx: ChainComplexMatrices) -> dict:
    def fmt(x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    return {str(k): [[fmt(x) for x in row] for row in M] for k, M in sorted(cx.matrices.items())}
