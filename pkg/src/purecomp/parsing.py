"""Reader for ring and module descriptions.

Grammar (whitespace and ``#`` comments ignored)::

    document  := statement*
    statement := "ring" ring
               | ("module" | "matrix") NAME ["over" ring] "presented" "by" matrix
    ring      := "Z" ["/" INT]
               | "GF" "(" INT ")" "[" "t" "]" ["/" "(" poly ")"]
               | "product" "(" ring ("," ring)+ ")"
               | "localtable" "{" "add" "=" table ";" "mul" "=" table [";" "units" "=" list] "}"
    matrix    := "[" [row ("," row)*] "]"          rows are generators
    row       := "[" [value ("," value)*] "]"
    value     := ["-"] INT | poly | "(" value ("," value)* ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import poly as P
from .module import PresentationMatrix
from .rings import (Integers, IntegersMod, PolynomialQuotient, ProductRing, Ring, RingError,
                    TableRing)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line, self.column = line, column


class UnknownRingKind(ParseError):
    pass


class BadMatrixShape(ParseError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[\[\](){},;=/+\-*^])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out, pos, line, start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), line, pos - start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line, start = line + 1, pos + i + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


@dataclass
class ModuleSpec:
    name: str
    presentation: PresentationMatrix


@dataclass
class InputDocument:
    ring: Ring | None = None
    modules: dict = field(default_factory=dict)    # name -> ModuleSpec, in input order

    def module(self, name: str | None = None) -> ModuleSpec:
        if not self.modules:
            raise KeyError("document defines no module")
        if name is None:
            return next(iter(self.modules.values()))
        return self.modules[name]


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None, cls=ParseError):
        tok = tok or self.tok
        return cls(msg, tok.line, tok.col)

    def take(self, text=None, kind=None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            raise self.error(f"expected {want}, found {t.text or 'end of input'!r}")
        self.i += 1
        return t

    def peek(self, text) -> bool:
        return self.tok.text == text

    def integer(self) -> int:
        sign = -1 if self.peek("-") and self.take("-") else 1
        return sign * int(self.take(kind="int").text)

    # -- rings ---------------------------------------------------------------
    def ring(self) -> Ring:
        t = self.take(kind="name")
        try:
            if t.text == "Z":
                if self.peek("/"):
                    self.take("/")
                    return IntegersMod(self.integer())
                return Integers()
            if t.text == "GF":
                self.take("(")
                p = self.integer()
                self.take(")")
                self.take("[")
                self.take("t")
                self.take("]")
                if self.peek("/"):
                    self.take("/")
                    self.take("(")
                    f = self.poly(p)
                    self.take(")")
                    return PolynomialQuotient(p, f)
                return PolynomialQuotient(p)
            if t.text == "product":
                self.take("(")
                factors = [self.ring()]
                while self.peek(","):
                    self.take(",")
                    factors.append(self.ring())
                self.take(")")
                return ProductRing(tuple(factors))
            if t.text == "localtable":
                return self.table_ring()
        except (ValueError, RingError) as e:
            if isinstance(e, ParseError):
                raise
            raise self.error(str(e), t) from None
        raise self.error(f"unknown ring kind {t.text!r}", t, UnknownRingKind)

    def int_matrix(self) -> list:
        self.take("[")
        rows = []
        while not self.peek("]"):
            self.take("[")
            row = []
            while not self.peek("]"):
                row.append(self.integer())
                if not self.peek("]"):
                    self.take(",")
            self.take("]")
            rows.append(row)
            if not self.peek("]"):
                self.take(",")
        self.take("]")
        return rows

    def table_ring(self) -> TableRing:
        self.take("{")
        self.take("add")
        self.take("=")
        add = self.int_matrix()
        self.take(";")
        self.take("mul")
        self.take("=")
        mul = self.int_matrix()
        units = None
        if self.peek(";"):
            self.take(";")
            self.take("units")
            self.take("=")
            self.take("[")
            units = []
            while not self.peek("]"):
                units.append(self.integer())
                if not self.peek("]"):
                    self.take(",")
            self.take("]")
        self.take("}")
        R = TableRing(tuple(map(tuple, add)), tuple(map(tuple, mul)))
        if units is not None and sorted(units) != R.units:
            raise ValueError("declared unit list disagrees with the multiplication table")
        return R

    # -- values ----------------------------------------------------------------
    def poly(self, p: int) -> tuple:
        """Sum of terms ``c``, ``t``, ``t^k``, ``c*t^k``, ``ct^k`` with ``+``/``-``."""
        f: tuple = ()
        sign = 1
        if self.peek("-"):
            self.take("-")
            sign = -1
        while True:
            c = 1
            if self.tok.kind == "int":
                c = int(self.take().text)
                if self.peek("*"):
                    self.take("*")
            e = 0
            if self.peek("t"):
                self.take("t")
                e = 1
                if self.peek("^"):
                    self.take("^")
                    e = int(self.take(kind="int").text)
            elif c == 1 and self.toks[self.i - 1].kind != "int":
                raise self.error("expected a polynomial term")
            f = P.add(f, P.trim([0] * e + [sign * c % p]), p)
            if self.peek("+"):
                self.take("+")
                sign = 1
            elif self.peek("-"):
                self.take("-")
                sign = -1
            else:
                return f

    def value(self, R: Ring):
        if isinstance(R, ProductRing):
            self.take("(")
            out = []
            for k, f in enumerate(R.factors):
                if k:
                    self.take(",")
                out.append(self.value(f))
            self.take(")")
            return tuple(out)
        if isinstance(R, PolynomialQuotient):
            return R._r(self.poly(R.p))
        t = self.tok
        k = self.integer()
        if isinstance(R, TableRing):
            if not 0 <= k < R.size:
                raise self.error(f"table index {k} out of range", t)
            return k
        if isinstance(R, IntegersMod):
            return k % R.n
        return k

    def matrix(self, R: Ring) -> PresentationMatrix:
        start = self.take("[")
        rows = []
        while not self.peek("]"):
            rt = self.take("[")
            row = []
            while not self.peek("]"):
                row.append(self.value(R))
                if not self.peek("]"):
                    self.take(",")
            self.take("]")
            if rows and len(row) != len(rows[0]):
                raise self.error("rows have different lengths", rt, BadMatrixShape)
            rows.append(row)
            if not self.peek("]"):
                self.take(",")
        self.take("]")
        if not rows:
            return PresentationMatrix.from_rows(R, [], nrels=0)
        return PresentationMatrix.from_rows(R, rows)

    # -- document ----------------------------------------------------------------
    def document(self) -> InputDocument:
        doc = InputDocument()
        while self.tok.kind != "eof":
            t = self.take(kind="name")
            if t.text == "ring":
                doc.ring = self.ring()
            elif t.text in ("module", "matrix"):
                name = self.take(kind="name")
                if name.text in doc.modules:
                    raise self.error(f"module {name.text!r} defined twice", name)
                R = doc.ring
                if self.peek("over"):
                    self.take("over")
                    R = self.ring()
                    if doc.ring is None:
                        doc.ring = R
                if R is None:
                    raise self.error("no ring given for this module", name)
                self.take("presented")
                self.take("by")
                doc.modules[name.text] = ModuleSpec(name.text, self.matrix(R))
            else:
                raise self.error(f"unknown statement {t.text!r}", t)
        return doc


def parse_document(text: str) -> InputDocument:
    return _Parser(text).document()


def parse_ring(text: str) -> Ring:
    p = _Parser(text)
    R = p.ring()
    p.take(kind="eof")
    return R


def format_value(R: Ring, a) -> str:
    if isinstance(R, ProductRing):
        return "(" + ",".join(format_value(f, x) for f, x in zip(R.factors, a)) + ")"
    return R.format(a)


def format_matrix(p: PresentationMatrix) -> str:
    return "[" + ",".join("[" + ",".join(format_value(p.ring, a) for a in row) + "]"
                          for row in p.entries) + "]"


def format_module(name: str, p: PresentationMatrix) -> str:
    return f"module {name} over {p.ring.descriptor()} presented by {format_matrix(p)}"
