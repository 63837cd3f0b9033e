"""The ``.vc`` input language.

A document looks like::

    format = 1
    field { p = 7, n = 1 }
    eq: x1*x2^4 + x1*x2^5 + x1^2*x2^3*x3*x4^4 = 2
    eq: x1*x2^5*x3^3 + x1*x2^3*x3^2 + x1^2*x2^4*x3^3*x4^5*x5*x6 = 4
    options { method = both }

Whitespace (including newlines) is insignificant and ``#`` starts a line
comment.  A term is ``coef * x<i>^<e> * ...`` where the coefficient and the
exponents are optional and the ``*`` is mandatory.  Coefficients are
integers (reduced into the prime field) or quoted field elements such as
``"1+2*t"``.  :func:`render` produces a normal form that :func:`parse`
reads back to an identical document.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .errors import InputError, ParseError
from .ffield import FiniteField
from .variety import Polynomial, PolySystem

__all__ = [
    "FieldSpec",
    "Term",
    "Equation",
    "InputDocument",
    "parse",
    "render",
    "FORMAT_VERSION",
]

FORMAT_VERSION = 1

Coef = int | str


@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int = 1
    modulus: str | None = None

    def build(self, primitive=None) -> FiniteField:
        return FiniteField(self.p, self.n, self.modulus, primitive)


@dataclass(frozen=True)
class Term:
    """``coef * prod(x_var ** exp)``; ``negate`` only applies to quoted coefs."""

    coef: Coef
    powers: tuple[tuple[int, int], ...]
    negate: bool = False


@dataclass(frozen=True)
class Equation:
    terms: tuple[Term, ...]
    rhs: Coef
    negate_rhs: bool = False


@dataclass(frozen=True)
class InputDocument:
    field: FieldSpec
    equations: tuple[Equation, ...]
    options: tuple[tuple[str, Coef], ...] = ()

    def option(self, key: str, default=None):
        return dict(self.options).get(key, default)

    @property
    def nvars(self) -> int:
        return max(
            (v for eq in self.equations for t in eq.terms for v, _ in t.powers),
            default=0,
        )

    def build_field(self, primitive=None) -> FiniteField:
        if primitive is None:
            primitive = self.option("primitive")
        return self.field.build(primitive)

    def to_poly_system(self, field: FiniteField | None = None) -> PolySystem:
        field = field or self.build_field()
        nvars = self.nvars
        used = {v for eq in self.equations for t in eq.terms for v, _ in t.powers}
        missing = sorted(set(range(1, nvars + 1)) - used)
        if missing:
            raise InputError(
                f"variables must be x1..x{nvars} without gaps; x{missing[0]} never occurs"
            )

        def value(c, negate):
            v = field.element(c)
            return field.neg(v) if negate else v

        polys = []
        for eq in self.equations:
            terms = []
            for t in eq.terms:
                exps = [0] * nvars
                for var, e in t.powers:
                    exps[var - 1] = e
                terms.append((value(t.coef, t.negate), tuple(exps)))
            polys.append(Polynomial(tuple(terms), value(eq.rhs, eq.negate_rhs)))
        return PolySystem(field, tuple(polys), nvars)


# -- tokenizer --------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<punct>[{}=,:+\-*^])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> Iterator[_Tok]:
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind not in ("ws", "comment"):
            yield _Tok(kind, tok, line, col)
        nl = tok.count("\n")
        if nl:
            line += nl
            line_start = m.start() + tok.rfind("\n") + 1
        pos = m.end()
    yield _Tok("eof", "", line, pos - line_start + 1)


_VAR_RE = re.compile(r"x([1-9]\d*)")


class _Parser:
    def __init__(self, text: str):
        self.toks = list(_tokenize(text))
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def next(self) -> _Tok:
        tok = self.tok
        self.i += 1
        return tok

    def at(self, text) -> bool:
        return self.tok.kind in ("punct", "ident") and self.tok.text == text

    def expect(self, text) -> _Tok:
        if not self.at(text):
            shown = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {shown!r}")
        return self.next()

    def integer(self) -> int:
        if self.tok.kind != "number":
            raise self.error(f"expected an integer, found {self.tok.text or 'end of input'!r}")
        return int(self.next().text)

    def document(self) -> InputDocument:
        field = None
        equations = []
        options = None
        seen_format = False
        while self.tok.kind != "eof":
            tok = self.tok
            if tok.kind != "ident":
                raise self.error(f"expected 'field', 'eq', 'options' or 'format', found {tok.text!r}")
            if tok.text == "format":
                if seen_format or field or equations or options:
                    raise self.error("'format' must come first and only once")
                self.next()
                self.expect("=")
                ver_tok = self.tok
                version = self.integer()
                if version != FORMAT_VERSION:
                    raise self.error(f"unsupported format version {version}", ver_tok)
                seen_format = True
            elif tok.text == "field":
                if field is not None:
                    raise self.error("duplicate 'field' block")
                self.next()
                field = self.field_block()
            elif tok.text == "eq":
                self.next()
                equations.append(self.equation())
            elif tok.text == "options":
                if options is not None:
                    raise self.error("duplicate 'options' block")
                self.next()
                options = self.options_block()
            else:
                raise self.error(f"unknown statement {tok.text!r}")
        if field is None:
            raise self.error("missing 'field { ... }' block")
        if not equations:
            raise self.error("no equations ('eq: ... = ...')")
        return InputDocument(field, tuple(equations), options or ())

    def _kv_block(self) -> list[tuple[str, _Tok]]:
        self.expect("{")
        pairs = []
        keys = set()
        while not self.at("}"):
            if pairs:
                self.expect(",")
            key_tok = self.tok
            if key_tok.kind != "ident":
                raise self.error(f"expected a key, found {key_tok.text or 'end of input'!r}")
            self.next()
            if key_tok.text in keys:
                raise self.error(f"duplicate key {key_tok.text!r}", key_tok)
            keys.add(key_tok.text)
            self.expect("=")
            val = self.tok
            if val.kind not in ("number", "ident", "string"):
                raise self.error(f"expected a value, found {val.text or 'end of input'!r}")
            self.next()
            pairs.append((key_tok.text, val))
        self.expect("}")
        return pairs

    def field_block(self) -> FieldSpec:
        start = self.tok
        values = {}
        for key, val in self._kv_block():
            if key in ("p", "n"):
                if val.kind != "number":
                    raise self.error(f"{key} must be an integer", val)
                values[key] = int(val.text)
            elif key == "modulus":
                if val.kind != "string":
                    raise self.error('modulus must be a quoted polynomial like "x^2+1"', val)
                values[key] = val.text[1:-1]
            else:
                raise self.error(f"unknown field key {key!r}", val)
        if "p" not in values:
            raise self.error("field block needs 'p'", start)
        return FieldSpec(values["p"], values.get("n", 1), values.get("modulus"))

    def options_block(self) -> tuple[tuple[str, Coef], ...]:
        out = []
        for key, val in self._kv_block():
            if val.kind == "number":
                out.append((key, int(val.text)))
            elif val.kind == "string":
                out.append((key, val.text[1:-1]))
            else:
                out.append((key, val.text))
        return tuple(out)

    def equation(self) -> Equation:
        self.expect(":")
        terms = []
        negate = False
        if self.at("-"):
            self.next()
            negate = True
        elif self.at("+"):
            raise self.error("an equation cannot start with '+'")
        terms.append(self.term(negate))
        while self.at("+") or self.at("-"):
            negate = self.next().text == "-"
            terms.append(self.term(negate))
        self.expect("=")
        negate_rhs = False
        if self.at("-"):
            self.next()
            negate_rhs = True
        tok = self.tok
        if tok.kind == "number":
            self.next()
            rhs: Coef = -int(tok.text) if negate_rhs else int(tok.text)
            negate_rhs = False
        elif tok.kind == "string":
            self.next()
            rhs = tok.text[1:-1]
        else:
            raise self.error(f"expected a constant right-hand side, found {tok.text or 'end of input'!r}")
        return Equation(tuple(terms), rhs, negate_rhs)

    def term(self, negate: bool) -> Term:
        tok = self.tok
        coef: Coef = 1
        str_negate = False
        if tok.kind in ("number", "string"):
            self.next()
            if tok.kind == "number":
                coef = int(tok.text)
            else:
                coef = tok.text[1:-1]
            if not self.at("*"):
                if self.tok.kind == "ident":
                    raise self.error(
                        f"missing '*' between coefficient {tok.text} and {self.tok.text}"
                    )
                raise self.error("a term needs at least one variable (constants go on the right)")
            self.next()
        if isinstance(coef, int):
            coef = -coef if negate else coef
        else:
            str_negate = negate
        powers: dict[int, int] = {}
        while True:
            var, exp = self.factor()
            powers[var] = powers.get(var, 0) + exp
            if not self.at("*"):
                break
            self.next()
        if self.tok.kind in ("ident", "number", "string"):
            raise self.error(f"missing '*' before {self.tok.text!r}")
        return Term(coef, tuple(sorted(powers.items())), str_negate)

    def factor(self) -> tuple[int, int]:
        tok = self.tok
        m = _VAR_RE.fullmatch(tok.text) if tok.kind == "ident" else None
        if not m:
            raise self.error(f"expected a variable x1, x2, ..., found {tok.text or 'end of input'!r}")
        self.next()
        exp = 1
        if self.at("^"):
            self.next()
            exp_tok = self.tok
            exp = self.integer()
            if exp == 0:
                raise self.error("exponents must be positive", exp_tok)
        return int(m.group(1)), exp


def parse(text: str) -> InputDocument:
    """Parse a ``.vc`` document; syntax errors carry line and column."""
    return _Parser(text).document()


def _coef_text(c: Coef) -> str:
    return f'"{c}"' if isinstance(c, str) else str(c)


def _render_term(t: Term, first: bool) -> str:
    powers = "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in t.powers)
    if isinstance(t.coef, int):
        neg = t.coef < 0
        mag = abs(t.coef)
        body = powers if mag == 1 else f"{mag}*{powers}"
    else:
        neg = t.negate
        body = f"{_coef_text(t.coef)}*{powers}"
    if first:
        return f"-{body}" if neg else body
    return f" - {body}" if neg else f" + {body}"


def render(doc: InputDocument) -> str:
    lines = [f"format = {FORMAT_VERSION}"]
    f = doc.field
    parts = [f"p = {f.p}", f"n = {f.n}"]
    if f.modulus is not None:
        parts.append(f'modulus = "{f.modulus}"')
    lines.append("field { " + ", ".join(parts) + " }")
    for eq in doc.equations:
        lhs = "".join(_render_term(t, i == 0) for i, t in enumerate(eq.terms))
        rhs = _coef_text(eq.rhs)
        if eq.negate_rhs:
            rhs = "-" + rhs
        lines.append(f"eq: {lhs} = {rhs}")
    if doc.options:
        body = ", ".join(f"{k} = {_option_text(v)}" for k, v in doc.options)
        lines.append("options { " + body + " }")
    return "\n".join(lines) + "\n"


def _option_text(v: Coef) -> str:
    if isinstance(v, int):
        return str(v)
    if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
        return v
    return f'"{v}"'
