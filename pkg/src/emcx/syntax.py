"""ASCII concrete syntax for terms and types.

Grammar::

    type  ::= tatom ('->' type)?          tatom ::= E | N | Nb | '(' type ')'
    term  ::= '\\' ident ':' type '.' term | atom+
    atom  ::= ident | constant | '(' term ')' | '(' ident ':' type ')' | '@' name

Application is left associative, arrows right associative.  A free variable
gets a type from its first letter (``a b c d`` are nodes, ``f g h`` are
``E -> E -> E``, anything else is an edge) unless written ``(x:T)``.
``@name`` expands a named combinator.
"""

from __future__ import annotations

import re

from .terms import (CONSTANTS, EEE, Arrow, App, Const, E, Lam, N, NB, Term,
                    Type, Var, free_vars)


class ParseError(ValueError):
    pass


def default_type(name: str) -> Type:
    c = name[0].lower()
    if c in "abcd":
        return N
    if c in "fgh":
        return EEE
    return E


_TOKEN = re.compile(r"\s*(?:(->|→)|(\\|λ)|([A-Za-z_][A-Za-z0-9_']*)|(\d+)|(@[A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        arrow, lam_, ident, num, comb, other = m.groups()
        if arrow:
            out.append("->")
        elif lam_:
            out.append("\\")
        elif ident:
            out.append(ident)
        elif num:
            if num not in ("0", "1"):
                raise ParseError(f"numeral {num} is not a term; use @natural{num}")
            out.append(num)
        elif comb:
            out.append(comb)
        elif other and not other.isspace():
            out.append(other)
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, tok):
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}")

    def done(self):
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r}")

    # types
    def type(self) -> Type:
        left = self.tatom()
        if self.peek() == "->":
            self.next()
            return Arrow(left, self.type())
        return left

    def tatom(self) -> Type:
        tok = self.next()
        if tok == "(":
            t = self.type()
            self.expect(")")
            return t
        try:
            return {"E": E, "N": N, "Nb": NB}[tok]
        except KeyError:
            raise ParseError(f"unknown type {tok!r}") from None

    # terms
    def term(self, scope: dict) -> Term:
        if self.peek() == "\\":
            self.next()
            name = self.ident()
            self.expect(":")
            ty = self.type()
            self.expect(".")
            inner = dict(scope)
            inner[name] = ty
            return Lam(name, ty, self.term(inner))
        head = self.atom(scope)
        while self.peek() not in (None, ")", "\\"):
            head = App(head, self.atom(scope))
        if self.peek() == "\\":
            head = App(head, self.term(scope))
        return head

    def ident(self) -> str:
        tok = self.next()
        if not re.match(r"[A-Za-z_]", tok) or tok in CONSTANTS:
            raise ParseError(f"expected an identifier, got {tok!r}")
        return tok

    def atom(self, scope: dict) -> Term:
        tok = self.next()
        if tok == "(":
            # typed free variable ``(x:T)`` or parenthesised term
            if (self.i + 1 < len(self.toks) and self.toks[self.i + 1] == ":"
                    and re.match(r"[A-Za-z_]", self.toks[self.i])):
                name = self.ident()
                self.expect(":")
                ty = self.type()
                self.expect(")")
                if name in scope and scope[name] != ty:
                    raise ParseError(f"{name} is bound at type {scope[name]!r}")
                return Var(name, ty)
            t = self.term(scope)
            self.expect(")")
            return t
        if tok in CONSTANTS:
            return Const(tok)
        if tok.startswith("@"):
            from .combinators import by_ascii_name
            try:
                return by_ascii_name(tok[1:])
            except KeyError:
                raise ParseError(f"unknown combinator {tok}") from None
        if re.match(r"[A-Za-z_]", tok):
            if tok in scope:
                return Var(tok, scope[tok])
            return Var(tok, default_type(tok))
        raise ParseError(f"unexpected {tok!r}")


def parse(text: str) -> Term:
    p = _Parser(text)
    t = p.term({})
    p.done()
    return t


def parse_type(text: str) -> Type:
    p = _Parser(text)
    t = p.type()
    p.done()
    return t


def show_type(t: Type) -> str:
    return repr(t)


def show(t: Term) -> str:
    """Print ``t`` so that ``parse(show(t))`` is alpha-equal to ``t``."""
    return _show(t, frozenset())


def _show(t: Term, bound) -> str:
    if isinstance(t, Var):
        if t.name in bound or default_type(t.name) == t.type:
            return t.name
        return f"({t.name}:{t.type!r})"
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Lam):
        return f"\\{t.var}:{t.vtype!r}. {_show(t.body, bound | {t.var})}"
    fun = _show(t.fun, bound)
    if isinstance(t.fun, Lam):
        fun = f"({fun})"
    arg = _show(t.arg, bound)
    if isinstance(t.arg, (App, Lam)):
        arg = f"({arg})"
    return f"{fun} {arg}"


def show_unicode(t: Term) -> str:
    """Human-friendly rendering with the usual symbols (not parseable)."""
    sym = {"circ": "∘", "bullet": "•", "dot": "·", "star": "*", "cvx": "⋄",
           "icvx": "★", "Sig": "Σ", "Del": "Δ", "iot": "ι", "sig": "σ",
           "del": "δ", "jj": "j", "SigB": "Σ̄", "DelB": "Δ̄", "iotB": "ῑ",
           "sigB": "σ̄", "delB": "δ̄", "jB": "j̄"}
    out = show(t)
    out = re.sub(r"\b(" + "|".join(sorted(sym, key=len, reverse=True)) + r")\b",
                 lambda m: sym[m.group(1)], out)
    return out.replace("\\", "λ").replace("Nb", "N̄")


__all__ = ["ParseError", "parse", "parse_type", "show", "show_type",
           "show_unicode", "default_type", "free_vars"]
