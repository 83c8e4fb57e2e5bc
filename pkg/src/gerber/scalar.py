"""Exact polynomials over Q, standing in for the smooth function ring.

A :class:`Scalar` is an element of Q[x_1, ..., x_m].  Terms are stored as a
map from dense exponent tuples to nonzero :class:`fractions.Fraction`
coefficients, so two equal polynomials always have identical term maps and
equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Exponent = tuple  # tuple[int, ...] of length nvars


def _grlex_key(exp: Exponent):
    # descending total degree, then descending lex (x before y)
    return (-sum(exp), tuple(-e for e in exp))


class Scalar:
    """Immutable multivariate polynomial with rational coefficients."""

    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | None = None, nvars: int = 0):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self._nvars = nvars
        self._hash = None

    # constructors -----------------------------------------------------

    @classmethod
    def const(cls, c, nvars: int = 0) -> "Scalar":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def zero(cls, nvars: int = 0) -> "Scalar":
        return cls({}, nvars)

    @classmethod
    def one(cls, nvars: int = 0) -> "Scalar":
        return cls.const(1, nvars)

    @classmethod
    def var(cls, index: int, nvars: int) -> "Scalar":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = 1
        return cls({tuple(exp): 1}, nvars)

    # accessors --------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict:
        """A copy of the term map ``{exponent: Fraction}``."""
        return dict(self._terms)

    def items(self):
        """Terms in graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self._terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial; raises if not constant."""
        if not self.is_constant():
            raise ValueError(f"{self!r} is not constant")
        return self._terms.get((0,) * self._nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other._nvars != self._nvars:
                raise ValueError(
                    f"variable-count mismatch: {self._nvars} vs {other._nvars}"
                )
            return other
        if isinstance(other, (int, Rational)):
            return Scalar.const(other, self._nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exp, c in other._terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return Scalar(terms, self._nvars)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({e: -c for e, c in self._terms.items()}, self._nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Scalar(out, self._nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Scalar.one(self._nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, var: int) -> "Scalar":
        """Formal partial derivative with respect to variable ``var``."""
        if not 0 <= var < self._nvars:
            raise IndexError(f"variable index {var} out of range for {self._nvars} variables")
        out = {}
        for exp, c in self._terms.items():
            if exp[var]:
                e = list(exp)
                e[var] -= 1
                out[tuple(e)] = c * exp[var]
        return Scalar(out, self._nvars)

    # comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            other = Scalar.const(other, self._nvars)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # printing ---------------------------------------------------------

    def render(self, names: Sequence[str] | None = None) -> str:
        """Text in the polynomial grammar, e.g. ``3/2*x^2*y - y + 1``."""
        if names is None:
            names = [f"x{i + 1}" for i in range(self._nvars)]
        if len(names) != self._nvars:
            raise ValueError("wrong number of variable names")
        if not self._terms:
            return "0"
        parts = []
        for k, (exp, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if mag != 1 or not body:
                num = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
                body = f"{num}*{body}" if body else num
            if k == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Scalar({self.render()!r}, nvars={self._nvars})"

    __str__ = render


def scalar_add(p: Scalar, q: Scalar) -> Scalar:
    return p + q


def scalar_mul(p: Scalar, q: Scalar) -> Scalar:
    return p * q


def partial_derive(p: Scalar, var: int) -> Scalar:
    return p.diff(var)


def scalar_sum(items: Iterable[Scalar], nvars: int) -> Scalar:
    total = Scalar.zero(nvars)
    for s in items:
        total = total + s
    return total
