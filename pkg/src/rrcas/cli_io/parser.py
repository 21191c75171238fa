"""Tokenizer and recursive-descent parser for ``.rrs`` session scripts.

Grammar::

    session    := stmt*
    stmt       := ring_decl | ideal_decl | cmd
    ring_decl  := "ring" NAME "=" field "[" NAME ("," NAME)* "]" ";"
    field      := "QQ" | "Fp" "(" INT ")"
    ideal_decl := "ideal" NAME "=" poly ("," poly)* ";"
    cmd        := VERB "(" [arg ("," arg)*] ")" ";"
    arg        := NAME "=" value | value
    value      := ["-"] INT | NAME

Polynomials use ``+ - * / ^`` with integer and rational literals; ``/`` only
divides by nonzero constants.  ``#`` and ``//`` start comments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from ..field import QQ, Field, FieldError
from ..poly import PolyRing, Polynomial

VERBS = ("gb", "tangent_cone", "ratliff_rush", "rho", "depth", "reg", "ext_piece",
         "a_invariants", "rees", "assoc_graded", "fiber_cone", "depth_table", "check")


class ParseError(Exception):
    """kind is ``lexical``, ``syntax`` or ``reference``."""

    def __init__(self, kind, message, line, col, expected=()):
        self.kind = kind
        self.line = line
        self.col = col
        self.expected = tuple(sorted(expected))
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{kind} error at {line}:{col}: {message}{exp}")


@dataclass
class Token:
    kind: str   # NAME INT OP EOF
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) |
    (?P<nl>\n) |
    (?P<comment>(?:\#|//)[^\n]*) |
    (?P<NAME>[A-Za-z_][A-Za-z0-9_]*) |
    (?P<INT>\d+) |
    (?P<OP>[;=\[\](),+\-*/^−])
""", re.VERBOSE)


def tokenize(text: str):
    toks = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("lexical", f"unexpected character {text[pos]!r}",
                             line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("NAME", "INT", "OP"):
            s = m.group()
            if s == "−":
                s = "-"
            toks.append(Token(kind, s, line, col))
        pos = m.end()
    toks.append(Token("EOF", "", line, pos - line_start + 1))
    return toks


@dataclass
class Command:
    verb: str
    args: list = dc_field(default_factory=list)      # positional values (str names or ints)
    options: dict = dc_field(default_factory=dict)   # keyword values
    line: int = 0


@dataclass
class SessionScript:
    field: Field | None = None
    ring_name: str | None = None
    variables: tuple = ()
    ideals: dict = dc_field(default_factory=dict)    # name -> list[Polynomial]
    commands: list = dc_field(default_factory=list)
    statements: list = dc_field(default_factory=list)  # ("ring", name) | ("ideal", name) | ("cmd", idx)

    @property
    def ring(self):
        if self.field is None:
            return None
        return PolyRing(self.variables, self.field)


class _Parser:
    def __init__(self, text, ring=None):
        self.toks = tokenize(text)
        self.i = 0
        self.ring = ring

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, expected=(), kind="syntax", tok=None):
        t = tok or self.tok
        raise ParseError(kind, msg, t.line, t.col, expected)

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, text):
        t = self.tok
        return t.kind in ("OP", "NAME") and t.text == text

    def expect(self, text):
        if not self.at(text):
            shown = self.tok.text or "end of input"
            self.error(f"unexpected {shown!r}", (repr(text),))
        return self.advance()

    def expect_kind(self, kind, what):
        if self.tok.kind != kind:
            shown = self.tok.text or "end of input"
            self.error(f"unexpected {shown!r}", (what,))
        return self.advance()

    # polynomials
    def poly(self):
        result = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance().text
            tok = self.tok
            rhs = self.unary()
            if op == "*":
                result = result * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    self.error("division only by nonzero constants", tok=tok)
                try:
                    result = result.scale(self.ring.field.inv(rhs.constant_coeff()))
                except (ZeroDivisionError, FieldError) as exc:
                    self.error(str(exc), tok=tok)
        return result

    def unary(self):
        if self.at("-"):
            self.advance()
            return -self.unary()
        if self.at("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.advance()
            e = self.expect_kind("INT", "integer exponent")
            base = base ** int(e.text)
        return base

    def atom(self):
        t = self.tok
        R = self.ring
        if t.kind == "INT":
            self.advance()
            try:
                return R.const(int(t.text))
            except FieldError as exc:
                self.error(str(exc), tok=t)
        if t.kind == "NAME":
            self.advance()
            if t.text not in R.names:
                self.error(f"unknown variable {t.text!r}", kind="reference", tok=t)
            return R.gen(t.text)
        if self.at("("):
            self.advance()
            inner = self.poly()
            self.expect(")")
            return inner
        shown = t.text or "end of input"
        self.error(f"unexpected {shown!r}", ("'('", "INT", "NAME", "'-'"))

    # session
    def session(self):
        s = SessionScript()
        while self.tok.kind != "EOF":
            t = self.tok
            if t.kind == "NAME" and t.text == "ring":
                self.ring_decl(s)
            elif t.kind == "NAME" and t.text == "ideal":
                self.ideal_decl(s)
            elif t.kind == "NAME" and t.text in VERBS:
                self.command(s)
            else:
                self.error(f"unexpected {t.text!r}", ("'ring'", "'ideal'") + tuple(repr(v) for v in VERBS))
        return s

    def ring_decl(self, s):
        start = self.advance()
        if s.field is not None:
            self.error("only one ring declaration per session", kind="reference", tok=start)
        name = self.expect_kind("NAME", "ring name").text
        self.expect("=")
        ft = self.tok
        if self.at("QQ"):
            self.advance()
            fld = QQ
        elif self.at("Fp"):
            self.advance()
            self.expect("(")
            p = self.expect_kind("INT", "prime")
            self.expect(")")
            try:
                fld = Field(int(p.text))
            except FieldError as exc:
                self.error(str(exc), tok=p)
        else:
            self.error(f"unexpected {ft.text!r}", ("'QQ'", "'Fp'"))
        self.expect("[")
        names = [self.expect_kind("NAME", "variable name").text]
        while self.at(","):
            self.advance()
            names.append(self.expect_kind("NAME", "variable name").text)
        self.expect("]")
        self.expect(";")
        if len(set(names)) != len(names):
            self.error("repeated variable name", kind="reference", tok=start)
        s.field, s.ring_name, s.variables = fld, name, tuple(names)
        self.ring = s.ring
        s.statements.append(("ring", name))

    def ideal_decl(self, s):
        start = self.advance()
        if self.ring is None:
            # syntax errors take priority: parse over the names that appear
            names = []
            for t in self.toks[self.i + 2:]:
                if t.text == ";" or t.kind == "EOF":
                    break
                if t.kind == "NAME" and t.text not in names:
                    names.append(t.text)
            self.ring = PolyRing(names)
            self.expect_kind("NAME", "ideal name")
            self.expect("=")
            self.poly_list()
            self.error("ideal declared before any ring", kind="reference", tok=start)
        nt = self.expect_kind("NAME", "ideal name")
        if nt.text in s.ideals or nt.text in self.ring.names:
            self.error(f"name {nt.text!r} already in use", kind="reference", tok=nt)
        self.expect("=")
        s.ideals[nt.text] = self.poly_list()
        s.statements.append(("ideal", nt.text))

    def poly_list(self):
        gens = [self.poly()]
        while self.at(","):
            self.advance()
            gens.append(self.poly())
        if not self.at(";"):
            shown = self.tok.text or "end of input"
            self.error(f"unexpected {shown!r}", ("';'", "','", "'+'", "'-'", "'*'", "'^'"))
        self.advance()
        return gens

    def command(self, s):
        vt = self.advance()
        self.expect("(")
        cmd = Command(vt.text, line=vt.line)
        if not self.at(")"):
            self.arg(cmd, s)
            while self.at(","):
                self.advance()
                self.arg(cmd, s)
        self.expect(")")
        self.expect(";")
        s.commands.append(cmd)
        s.statements.append(("cmd", len(s.commands) - 1))

    def value(self):
        t = self.tok
        if self.at("-"):
            self.advance()
            v = self.expect_kind("INT", "integer")
            return -int(v.text)
        if t.kind == "INT":
            self.advance()
            return int(t.text)
        if t.kind == "NAME":
            self.advance()
            return t.text
        self.error(f"unexpected {t.text or 'end of input'!r}", ("INT", "NAME"))

    def arg(self, cmd, s):
        t = self.tok
        if t.kind == "NAME" and self.toks[self.i + 1].text == "=":
            self.advance()
            self.advance()
            cmd.options[t.text] = self.value()
            return
        v = self.value()
        cmd.args.append(v)


def parse_session(text: str) -> SessionScript:
    """Parse a session; errors carry line/column and the expected tokens."""
    s = _Parser(text).session()
    check_references(s)
    return s


def check_references(s: SessionScript):
    from ..session import COMMAND_SPECS
    for cmd in s.commands:
        spec = COMMAND_SPECS[cmd.verb]
        if not spec.min_args <= len(cmd.args) <= spec.max_args:
            raise ParseError("reference", f"{cmd.verb}: expected {spec.arity_text()} arguments, "
                             f"got {len(cmd.args)}", cmd.line, 1)
        for pos, v in enumerate(cmd.args):
            role = spec.role(pos)
            if role in ("ideal", "ideal_m") and not isinstance(v, str):
                raise ParseError("reference", f"{cmd.verb}: argument {pos + 1} must be an ideal name",
                                 cmd.line, 1)
            if role == "ideal" and v not in s.ideals:
                raise ParseError("reference", f"{cmd.verb}: unknown ideal {v!r}", cmd.line, 1)
            if role == "ideal_m" and v not in s.ideals and v != "m":
                raise ParseError("reference", f"{cmd.verb}: unknown ideal {v!r}", cmd.line, 1)
            if role == "int" and not isinstance(v, int):
                raise ParseError("reference", f"{cmd.verb}: argument {pos + 1} must be an integer",
                                 cmd.line, 1)
            if role == "word" and v not in spec.words:
                raise ParseError("reference", f"{cmd.verb}: unknown name {v!r}; expected one of "
                                 f"{', '.join(sorted(spec.words))}", cmd.line, 1)
        for k, v in cmd.options.items():
            if k not in spec.options:
                raise ParseError("reference", f"{cmd.verb}: unknown option {k!r}", cmd.line, 1)
            if not isinstance(v, int):
                raise ParseError("reference", f"{cmd.verb}: option {k} needs an integer", cmd.line, 1)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    p = _Parser(text, ring)
    f = p.poly()
    if p.tok.kind != "EOF":
        p.error(f"unexpected {p.tok.text!r}", ("'+'", "'-'", "'*'", "'^'", "end of input"))
    return f


def format_session(s: SessionScript) -> str:
    """Print a session back to source text (parse . format is a fixed point)."""
    from ..poly import format_poly
    lines = []
    for kind, ref in s.statements:
        if kind == "ring":
            lines.append(f"ring {ref} = {s.field.name}[{','.join(s.variables)}];")
        elif kind == "ideal":
            lines.append(f"ideal {ref} = {', '.join(format_poly(g) for g in s.ideals[ref])};")
        else:
            cmd = s.commands[ref]
            parts = [str(a) for a in cmd.args]
            parts += [f"{k}={v}" for k, v in cmd.options.items()]
            lines.append(f"{cmd.verb}({', '.join(parts)});")
    return "\n".join(lines) + ("\n" if lines else "")
