"""Parser for the small imperative input language.

::

    program := stmt*
    stmt    := ident "=" rhs ";" | "skip" ";"
             | "if" "(" cond ")" block ("else" block)?
             | "while" "(" cond ")" block
             | "for" ident "=" num "to" num block
             | "@" ident ":" stmt
    rhs     := expr | "?" | "random" "(" ")"
    expr    := term (("+" | "-") term)*
    term    := num | ident | num "*" ident | "-" term
    cond    := "?" | "random" "(" ")"
             | ident ("-" ident)? cmpop num
             | ident ("-" ident)? "in" setlit
             | ident ("-" ident)? "%" int "==" int
    setlit  := "[" bound "," bound "]" | int "Z" "+" int
    bound   := num | "-oo" | "+oo"
    num     := "-"? int ("/" int)?

Comments run from ``#`` to the end of the line.  ``@name:`` labels the program
point just before the statement that follows it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import scalar as sc
from .basis import Range, Residues
from .expr import (CMP_OPS, Add, Cmp, DiffCmp, DiffInSet, Expr, GuardAtom, Mod,
                   Mul, Neg, NonDet, Num, Random, Sub, Var, VarInSet)
from .scalar import INF, NEG_INF

KEYWORDS = {"if", "else", "while", "for", "to", "in", "skip", "random"}
ZERO_NAME = "v0"


class ParseError(Exception):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {msg}" if line else msg)
        self.line = line
        self.col = col


# -- AST ---------------------------------------------------------------------------


@dataclass
class Assign:
    var: int
    expr: Expr


@dataclass
class Skip:
    pass


@dataclass
class If:
    cond: GuardAtom
    then: list
    orelse: list


@dataclass
class While:
    cond: GuardAtom
    body: list


@dataclass
class Labeled:
    label: str
    stmt: object


@dataclass
class Block:
    stmts: list


Stmt = Assign | Skip | If | While | Labeled | Block


@dataclass
class Program:
    """``names[0]`` is the hidden zero variable; user variables follow in
    order of first assignment."""

    names: list[str] = field(default_factory=lambda: ["0"])
    body: list = field(default_factory=list)
    labels: list[str] = field(default_factory=list)
    mode: str = sc.INT

    @property
    def nvars(self) -> int:
        return len(self.names)

    def var(self, name: str) -> int:
        return self.names.index(name)


# -- lexer ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>\#[^\n]*)"
    r"|(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op><=|>=|==|!=|[-+*/%<>=;(){}\[\],:@?])"
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# -- parser --------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, mode: str):
        self.toks = tokenize(text)
        self.i = 0
        self.mode = mode
        self.prog = Program(mode=mode)

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        raise ParseError(f"{msg} (found {found!r})", tok.line, tok.col)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "id") and self.tok.text == text

    def take(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def ident(self) -> Token:
        t = self.tok
        if t.kind != "id" or t.text in KEYWORDS:
            self.error("expected identifier")
        if t.text == ZERO_NAME:
            self.error(f"{ZERO_NAME!r} is reserved")
        self.i += 1
        return t

    # variables
    def declare(self, t: Token) -> int:
        if t.text not in self.prog.names:
            self.prog.names.append(t.text)
        return self.prog.names.index(t.text)

    def use(self, t: Token) -> int:
        if t.text not in self.prog.names:
            raise ParseError(f"variable {t.text!r} used before assignment", t.line, t.col)
        return self.prog.names.index(t.text)

    # numbers
    def integer(self) -> int:
        neg = self.accept("-")
        t = self.tok
        if t.kind != "num":
            self.error("expected integer")
        self.i += 1
        return -int(t.text) if neg else int(t.text)

    def number(self):
        start = self.tok
        v = self.integer()
        if self.at("/") and self.peek().kind == "num":
            self.i += 1
            den = int(self.tok.text)
            self.i += 1
            if den == 0:
                self.error("zero denominator", start)
            q = Fraction(v, den)
            if self.mode == sc.INT and q.denominator != 1:
                self.error("rational constant in integer mode", start)
            return sc.normalize(q, self.mode)
        return v

    def bound(self):
        if (self.at("-") or self.at("+")) and self.peek().kind == "id" and self.peek().text == "oo":
            sign = self.tok.text
            self.i += 2
            return NEG_INF if sign == "-" else INF
        self.accept("+")
        return self.number()

    # statements
    def program(self) -> Program:
        while self.tok.kind != "eof":
            self.prog.body.append(self.stmt())
        return self.prog

    def block(self) -> list:
        self.take("{")
        out = []
        while not self.at("}"):
            if self.tok.kind == "eof":
                self.error("expected '}'")
            out.append(self.stmt())
        self.take("}")
        return out

    def stmt(self):
        t = self.tok
        if self.accept("@"):
            name = self.ident().text
            if name in self.prog.labels:
                raise ParseError(f"duplicate label {name!r}", t.line, t.col)
            self.prog.labels.append(name)
            self.take(":")
            return Labeled(name, self.stmt())
        if self.accept("skip"):
            self.take(";")
            return Skip()
        if self.accept("if"):
            self.take("(")
            c = self.cond()
            self.take(")")
            then = self.block()
            orelse = self.block() if self.accept("else") else []
            return If(c, then, orelse)
        if self.accept("while"):
            self.take("(")
            c = self.cond()
            self.take(")")
            return While(c, self.block())
        if self.accept("for"):
            v = self.declare(self.ident())
            self.take("=")
            lo = self.number()
            self.take("to")
            hi = self.number()
            body = self.block()
            step = Assign(v, Add(Var(v), Num(1)))
            return Block([Assign(v, Num(lo)), While(Cmp(v, "<=", hi), body + [step])])
        if t.kind == "id":
            name = self.ident()
            self.take("=")
            e = self.rhs()
            self.take(";")
            return Assign(self.declare(name), e)
        self.error("expected statement")

    def rhs(self) -> Expr:
        if self.accept("?"):
            return Random()
        if self.at("random"):
            self.i += 1
            self.take("(")
            self.take(")")
            return Random()
        return self.expr()

    def expr(self) -> Expr:
        e = self.term()
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            r = self.term()
            e = Add(e, r) if op == "+" else Sub(e, r)
        return e

    def term(self) -> Expr:
        if self.accept("-"):
            return Neg(self.term())
        if self.tok.kind == "num":
            k = self.number()
            if self.accept("*"):
                return Mul(k, Var(self.use(self.ident())))
            return Num(k)
        if self.tok.kind == "id":
            return Var(self.use(self.ident()))
        self.error("expected expression")

    def cond(self) -> GuardAtom:
        if self.accept("?"):
            return NonDet()
        if self.at("random"):
            self.i += 1
            self.take("(")
            self.take(")")
            return NonDet()
        x = self.use(self.ident())
        y = None
        if self.accept("-"):
            y = self.use(self.ident())
        if self.accept("in"):
            s = self.setlit()
            return VarInSet(x, s) if y is None else DiffInSet(x, y, s)
        if self.accept("%"):
            k = self.integer()
            self.take("==")
            r = self.integer()
            if k == 0:
                self.error("modulus must be non-zero")
            return Mod(x, y, k, r)
        t = self.tok
        if t.kind == "op" and t.text in CMP_OPS:
            self.i += 1
            c = self.number()
            return Cmp(x, t.text, c) if y is None else DiffCmp(x, y, t.text, c)
        self.error("expected comparison, 'in' or '%'")

    def setlit(self):
        if self.accept("["):
            lo = self.bound()
            self.take(",")
            hi = self.bound()
            self.take("]")
            return Range(lo, hi)
        k = self.integer()
        t = self.tok
        if t.kind != "id" or t.text != "Z":
            self.error("expected 'Z' in congruence literal")
        self.i += 1
        self.take("+")
        r = self.integer()
        return Residues(abs(k), r)


def parse(text: str, mode: str = sc.INT) -> Program:
    """Parse program text; raises :class:`ParseError` with line/column."""
    return _Parser(text, mode).program()


# -- guard negation ------------------------------------------------------------------

_FLIP = {"<=": ">=", "<": ">=", ">=": "<=", ">": "<="}


def negate(g: GuardAtom, mode: str = sc.INT) -> GuardAtom:
    """A guard satisfied by (at least) every environment failing ``g``.

    Integer comparisons negate exactly; over Q the strict complement is
    widened to the closed one.  ``==`` negates to the non-deterministic
    guard, which filters nothing.
    """
    if isinstance(g, (Cmp, DiffCmp)):
        op, c = g.op, g.value
        if op == "==":
            return NonDet()
        if op == "!=":
            new_op, new_c = "==", c
        else:
            new_op = _FLIP[op]
            new_c = c
            if mode == sc.INT:
                if op == "<=":
                    new_c = c + 1
                elif op == ">=":
                    new_c = c - 1
        if isinstance(g, Cmp):
            return Cmp(g.var, new_op, new_c)
        return DiffCmp(g.var, g.other, new_op, new_c)
    return NonDet()
