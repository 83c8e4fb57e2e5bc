"""Multivectors and forms in a fixed global frame.

A basis monomial is a strictly increasing tuple of 0-based frame indices;
``(0, 2)`` stands for ``X_1 ^ X_3`` (or ``a_1 ^ a_3`` on the dual side).
Frame monomials are ordered lexicographically on these tuples, which is
also the chain-space basis order used by :mod:`gerber.homology`.

Contraction of a composite form is iterated degree-1 contraction, applied
left factor first::

    (w ^ t) -| u  ==  t -| (w -| u)

so that ``(a_1 ^ ... ^ a_k) -| (X_1 ^ ... ^ X_k) == 1``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping

from .scalar import Scalar


def sort_sign(indices: Iterable[int]):
    """Sort ``indices``, returning ``(sign, sorted_tuple)``; sign 0 on a repeat."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


def frame_monomials(rank: int, degree: int):
    """All basis index tuples of ``degree``, in lexicographic order."""
    if degree < 0 or degree > rank:
        return []
    return list(combinations(range(rank), degree))


def parity_sign(k: int) -> int:
    return -1 if k % 2 else 1


class _Graded:
    """Shared storage and linear structure for multivectors and forms."""

    __slots__ = ("_coeffs", "_rank", "_nvars", "_hash")

    def __init__(self, coeffs: Mapping[tuple, Scalar] | None = None, rank: int = 0, nvars: int = 0):
        clean: dict = {}
        for key, c in (coeffs or {}).items():
            if not isinstance(c, Scalar):
                c = Scalar.const(c, nvars)
            elif c.nvars != nvars:
                raise ValueError(f"coefficient over {c.nvars} variables, expected {nvars}")
            sign, key = sort_sign(key)
            if sign == 0 or not c:
                continue
            if key and (key[0] < 0 or key[-1] >= rank):
                raise ValueError(f"frame index out of range in {key} for rank {rank}")
            val = clean.get(key, Scalar.zero(nvars)) + (c if sign > 0 else -c)
            if val:
                clean[key] = val
            else:
                clean.pop(key, None)
        self._coeffs = clean
        self._rank = rank
        self._nvars = nvars
        self._hash = None

    @classmethod
    def zero(cls, rank: int, nvars: int = 0):
        return cls({}, rank, nvars)

    @classmethod
    def basis(cls, indices: Iterable[int], rank: int, nvars: int = 0, coeff=1):
        """The monomial ``coeff * e_{i1} ^ ... ^ e_{ik}`` (indices need not be sorted)."""
        return cls({tuple(indices): coeff}, rank, nvars)

    @classmethod
    def scalar(cls, f: Scalar, rank: int):
        return cls({(): f}, rank, f.nvars)

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        """``(indices, Scalar)`` pairs by increasing degree, then lex order."""
        return sorted(self._coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def coefficient(self, indices: Iterable[int]) -> Scalar:
        sign, key = sort_sign(indices)
        c = self._coeffs.get(key, Scalar.zero(self._nvars))
        return c if sign >= 0 else -c

    def degrees(self) -> set:
        return {len(k) for k in self._coeffs}

    def degree(self) -> int:
        """The degree of a homogeneous element; raises if mixed.  Zero is degree 0."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"element is not homogeneous (degrees {sorted(degs)})")
        return degs.pop() if degs else 0

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def part(self, degree: int):
        return type(self)({k: c for k, c in self._coeffs.items() if len(k) == degree}, self._rank, self._nvars)

    def is_zero(self) -> bool:
        return not self._coeffs

    def scalar_part(self) -> Scalar:
        return self._coeffs.get((), Scalar.zero(self._nvars))

    def top_coefficient(self) -> Scalar:
        return self._coeffs.get(tuple(range(self._rank)), Scalar.zero(self._nvars))

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other._rank != self._rank or other._nvars != self._nvars:
            raise ValueError(
                f"rank/variable mismatch: ({self._rank}, {self._nvars}) vs ({other._rank}, {other._nvars})"
            )

    def __add__(self, other):
        if not isinstance(other, _Graded):
            return NotImplemented
        self._check(other)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out[k] + c if k in out else c
        return type(self)(out, self._rank, self._nvars)

    def __neg__(self):
        return type(self)({k: -c for k, c in self._coeffs.items()}, self._rank, self._nvars)

    def __sub__(self, other):
        if not isinstance(other, _Graded):
            return NotImplemented
        return self + (-other)

    def scale(self, f) -> "_Graded":
        """Multiply every coefficient by the function (or number) ``f``."""
        if isinstance(f, Scalar) and f.nvars != self._nvars:
            raise ValueError("variable-count mismatch")
        return type(self)({k: c * f for k, c in self._coeffs.items()}, self._rank, self._nvars)

    def __mul__(self, f):
        if isinstance(f, _Graded):
            return NotImplemented
        return self.scale(f)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if type(other) is not type(self):
            return NotImplemented
        return (self._rank, self._nvars, self._coeffs) == (other._rank, other._nvars, other._coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self._rank, self._nvars, frozenset(self._coeffs.items())))
        return self._hash

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        if not self._coeffs:
            return f"{type(self).__name__}(0, rank={self._rank})"
        body = " + ".join(f"({c.render()})*{list(k)}" for k, c in self.items())
        return f"{type(self).__name__}({body}, rank={self._rank})"


class MultiVector(_Graded):
    """An element of Gamma(^* A): Scalar coefficients on frame monomials X_I."""

    __slots__ = ()


class Form(_Graded):
    """An element of Gamma(^* A*): Scalar coefficients on coframe monomials a_I."""

    __slots__ = ()


def _wedge(u: _Graded, v: _Graded):
    u._check(v)
    out: dict = {}
    zero = Scalar.zero(u.nvars)
    for I, f in u._coeffs.items():
        for J, g in v._coeffs.items():
            sign, K = sort_sign(I + J)
            if sign == 0:
                continue
            term = f * g
            out[K] = out.get(K, zero) + (term if sign > 0 else -term)
    return type(u)(out, u.rank, u.nvars)


def wedge(u: MultiVector, v: MultiVector) -> MultiVector:
    """Exterior product of multivectors."""
    if not isinstance(u, MultiVector) or not isinstance(v, MultiVector):
        raise TypeError("wedge expects two MultiVectors")
    return _wedge(u, v)


def form_wedge(w: Form, t: Form) -> Form:
    """Exterior product of forms."""
    if not isinstance(w, Form) or not isinstance(t, Form):
        raise TypeError("form_wedge expects two Forms")
    return _wedge(w, t)


def wedge_all(items, rank: int, nvars: int = 0) -> MultiVector:
    result = MultiVector.basis((), rank, nvars)
    for item in items:
        result = wedge(result, item)
    return result


def _contract_monomial(J: tuple, I: tuple):
    """Contract a_J into X_I: returns ``(sign, remaining)`` or ``(0, ())``."""
    remaining = list(I)
    sign = 1
    for j in J:
        try:
            pos = remaining.index(j)
        except ValueError:
            return 0, ()
        if pos % 2:
            sign = -sign
        del remaining[pos]
    return sign, tuple(remaining)


def contract(w: Form, u: MultiVector) -> MultiVector:
    """Interior product ``w -| u``; terms with ``|w| > |u|`` contract to zero."""
    if not isinstance(w, Form) or not isinstance(u, MultiVector):
        raise TypeError("contract expects (Form, MultiVector)")
    if w.rank != u.rank or w.nvars != u.nvars:
        raise ValueError(f"rank/variable mismatch: ({w.rank}, {w.nvars}) vs ({u.rank}, {u.nvars})")
    out: dict = {}
    zero = Scalar.zero(u.nvars)
    for J, f in w._coeffs.items():
        for I, g in u._coeffs.items():
            if len(J) > len(I):
                continue
            sign, K = _contract_monomial(J, I)
            if sign == 0:
                continue
            term = f * g
            out[K] = out.get(K, zero) + (term if sign > 0 else -term)
    return MultiVector(out, u.rank, u.nvars)


def pair(w: Form, u: MultiVector) -> Scalar:
    """Evaluate a form on a multivector: the degree-0 part of ``w -| u``."""
    return contract(w, u).scalar_part()


def top_section(rank: int, nvars: int = 0, coeff=1) -> MultiVector:
    """``coeff * X_1 ^ ... ^ X_n``."""
    return MultiVector.basis(range(rank), rank, nvars, coeff)
