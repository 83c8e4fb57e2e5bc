"""Text grammar for polynomials, multivectors and forms, plus the matching printers.

Polynomials::

    poly  := ['+'|'-'] term (('+'|'-') term)*
    term  := rational? ('*'? var ('^' nat)?)*
    rational := int ('/' posint)?

Multivector and form expressions::

    expr  := '0' | ['+'|'-'] mterm (('+'|'-') mterm)*
    mterm := '(' poly ')' [factor ('/\\' factor)*]  |  factor ('/\\' factor)*

A term made only of ``(poly)`` is a degree-0 element; the printers emit it
so that every rendered value parses back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .graded import Form, MultiVector
from .scalar import Scalar


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<NUM>\d+)|(?P<IDENT>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<WEDGE>/\\)|(?P<op>[-+*/^()])"
)
_OPS = {"+": "PLUS", "-": "MINUS", "*": "STAR", "/": "SLASH", "^": "CARET", "(": "LPAREN", ")": "RPAREN"}


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "op":
            tokens.append(Token(_OPS[m.group()], m.group(), line, col))
        elif kind != "ws":
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, base_vars, frame=(), coframe=()):
        self.tokens = tokenize(text)
        if self.tokens[0].kind == "EOF":
            raise ParseError("empty input", 1, 1)
        self.pos = 0
        self.base_vars = list(base_vars)
        self.frame = list(frame)
        self.coframe = list(coframe)
        self.nvars = len(self.base_vars)

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def take(self, kind=None) -> Token:
        t = self.tok
        if kind is not None and t.kind != kind:
            self.fail(f"expected {kind.lower()}, found {t.text or 'end of input'!r}")
        self.pos += 1
        return t

    def fail(self, message, tok=None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column)

    def expect_end(self):
        if self.tok.kind != "EOF":
            self.fail(f"unexpected {self.tok.text!r}")

    # polynomials -------------------------------------------------------

    def poly(self) -> Scalar:
        sign = 1
        if self.tok.kind in ("PLUS", "MINUS"):
            sign = -1 if self.take().kind == "MINUS" else 1
        total = self.term() * sign
        while self.tok.kind in ("PLUS", "MINUS"):
            s = -1 if self.take().kind == "MINUS" else 1
            total = total + self.term() * s
        return total

    def term(self) -> Scalar:
        start = self.tok
        coeff = Fraction(1)
        seen = False
        if self.tok.kind == "NUM":
            coeff = Fraction(int(self.take().text))
            if self.tok.kind == "SLASH":
                self.take()
                den_tok = self.take("NUM")
                den = int(den_tok.text)
                if den == 0:
                    self.fail("zero denominator", den_tok)
                coeff /= den
            seen = True
        exp = [0] * self.nvars
        while True:
            if self.tok.kind == "STAR":
                self.take()
                if self.tok.kind != "IDENT":
                    self.fail("expected a variable after '*'")
            if self.tok.kind != "IDENT" or self.tok.text not in self.base_vars:
                if self.tok.kind == "IDENT" and not (self.tok.text in self.frame or self.tok.text in self.coframe):
                    self.fail(f"unknown identifier {self.tok.text!r}")
                break
            name = self.take().text
            power = 1
            if self.tok.kind == "CARET":
                self.take()
                power = int(self.take("NUM").text)
            exp[self.base_vars.index(name)] += power
            seen = True
        if not seen:
            self.fail(f"expected a term, found {start.text or 'end of input'!r}", start)
        return Scalar({tuple(exp): coeff}, self.nvars)

    # graded expressions ------------------------------------------------

    def graded(self, kind=None):
        if self.tok.kind == "NUM" and self.tok.text == "0" and self.tokens[self.pos + 1].kind == "EOF":
            self.take()
            return [], kind
        terms = []
        sign = 1
        if self.tok.kind in ("PLUS", "MINUS"):
            sign = -1 if self.take().kind == "MINUS" else 1
        terms.append(self.mterm(sign))
        while self.tok.kind in ("PLUS", "MINUS"):
            s = -1 if self.take().kind == "MINUS" else 1
            terms.append(self.mterm(s))
        for t_kind, _, _, tok in terms:
            if t_kind is None:
                continue
            if kind is None:
                kind = t_kind
            elif t_kind != kind:
                self.fail(f"{t_kind} term in a {kind} expression", tok)
        return terms, kind

    def mterm(self, sign):
        coeff = Scalar.const(sign, self.nvars)
        if self.tok.kind == "LPAREN":
            self.take()
            coeff = self.poly() * sign
            self.take("RPAREN")
            if self.tok.kind != "IDENT":
                return (None, (), coeff, self.tok)
        first = self.tok
        kind, indices = self.factor(None)
        while self.tok.kind == "WEDGE":
            self.take()
            kind, i = self.factor(kind)
            indices += i
        return (kind, tuple(indices), coeff, first)

    def factor(self, kind):
        tok = self.tok
        if tok.kind != "IDENT":
            self.fail(f"expected a frame symbol, found {tok.text or 'end of input'!r}")
        name = tok.text
        if name in self.frame:
            k, idx = "multivector", self.frame.index(name)
        elif name in self.coframe:
            k, idx = "form", self.coframe.index(name)
        elif name in self.base_vars:
            self.fail(f"base variable {name!r} must appear inside a parenthesised coefficient")
        else:
            self.fail(f"unknown symbol {name!r}")
        if kind is not None and k != kind:
            self.fail("frame and coframe symbols mixed in one term")
        self.take()
        return k, [idx]


def parse_poly(text: str, base_vars) -> Scalar:
    p = _Parser(text, base_vars)
    result = p.poly()
    p.expect_end()
    return result


def parse_expression(text: str, spec, kind: str | None = None):
    """Parse a multivector or form over ``spec``; ``kind`` forces one of the two."""
    if kind not in (None, "multivector", "form"):
        raise ValueError(f"unknown kind {kind!r}")
    p = _Parser(text, spec.base_vars, spec.frame, spec.coframe)
    terms, found = p.graded(kind)
    p.expect_end()
    found = found or "multivector"
    cls = MultiVector if found == "multivector" else Form
    result = cls.zero(spec.rank, spec.nvars)
    for _, indices, coeff, _ in terms:
        result = result + cls.basis(indices, spec.rank, spec.nvars, coeff)
    return result


def render_scalar(f: Scalar, spec) -> str:
    return f.render(list(spec.base_vars))


def render(u, spec) -> str:
    """Print a multivector or form in the expression grammar, e.g. ``-(1) e3``."""
    names = spec.frame if isinstance(u, MultiVector) else spec.coframe
    items = u.items()
    if not items:
        return "0"
    parts = []
    for k, (I, c) in enumerate(items):
        negative = len(c.terms) == 1 and next(iter(c.terms.values())) < 0
        body = render_scalar(-c if negative else c, spec)
        text = f"({body})"
        if I:
            text += " " + " /\\ ".join(names[i] for i in I)
        if k == 0:
            parts.append(f"-{text}" if negative else text)
        else:
            parts.append(f" {'-' if negative else '+'} {text}")
    return "".join(parts)
