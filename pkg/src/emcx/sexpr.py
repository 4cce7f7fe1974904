"""S-expressions and the proof-script file format.

A script file holds one form::

    (script NAME
      (calculus base-em)
      (deps LEMMA ...)
      (hyp NAME "lhs" "rhs")            ; zero or more
      (postulate "why")                 ; optional: accepted on the model oracle
      (goal "lhs" "rhs")
      (steps
        (Rewrite RULE SIDE PATH DIR)
        (Beta SIDE PATH)
        (Eta SIDE PATH DIR)
        (UseLemma LEMMA SIDE PATH DIR ((VAR "term") ...))
        (ExtInjective circ)
        (EmExtend LEMMA em)
        (ApplyBothSides "term")
        (AbstractBothSides VAR "type")
        (Refl) (Symm) (Trans "term")))

``SIDE`` is ``l`` or ``r``, ``PATH`` a list of 0/1 such as ``(0 1 1)``,
``DIR`` is ``fwd`` or ``bwd``; terms and types use the ASCII term syntax.
A ``;`` starts a comment running to the end of the line.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .steps import (AbstractBothSides, ApplyBothSides, Beta, EmExtend, Eta,
                    ExtInjective, Refl, Rewrite, Symm, Trans, UseLemma)
from .syntax import ParseError, parse, parse_type, show, show_type
from .terms import alpha_equal


class SexprError(ParseError):
    pass


class Str(str):
    """A quoted string atom (as opposed to a bare symbol)."""


def tokenize(text: str):
    out = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            out.append(c)
            i += 1
        elif c == '"':
            j = i + 1
            buf = []
            while j < n and text[j] != '"':
                if text[j] == "\\" and j + 1 < n:
                    j += 1
                buf.append(text[j])
                j += 1
            if j >= n:
                raise SexprError("unterminated string")
            out.append(Str("".join(buf)))
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '();"':
                j += 1
            out.append(text[i:j])
            i = j
    return out


def read(text: str):
    """Parse one S-expression into nested lists of ``str`` / :class:`Str`."""
    toks = tokenize(text)
    pos = 0

    def form():
        nonlocal pos
        if pos >= len(toks):
            raise SexprError("unexpected end of input")
        tok = toks[pos]
        pos += 1
        if tok == "(" and not isinstance(tok, Str):
            items = []
            while True:
                if pos >= len(toks):
                    raise SexprError("missing )")
                if toks[pos] == ")" and not isinstance(toks[pos], Str):
                    pos += 1
                    return items
                items.append(form())
        if tok == ")" and not isinstance(tok, Str):
            raise SexprError("unexpected )")
        return tok

    out = form()
    if pos != len(toks):
        raise SexprError("trailing input after the form")
    return out


def quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def write(x) -> str:
    if isinstance(x, Str):
        return quote(x)
    if isinstance(x, list):
        return "(" + " ".join(write(y) for y in x) + ")"
    return str(x)


# --------------------------------------------------------------------------- #
# scripts
# --------------------------------------------------------------------------- #

@dataclass
class Script:
    name: str
    calculus: str
    lhs: object
    rhs: object
    steps: list = field(default_factory=list)
    deps: tuple = ()
    hyps: tuple = ()               # ((name, lhs, rhs), ...)
    postulate: str = ""            # non-empty: taken on the model oracle, with this reason

    def same_as(self, other: "Script") -> bool:
        return (self.name == other.name and self.calculus == other.calculus
                and self.postulate == other.postulate
                and alpha_equal(self.lhs, other.lhs) and alpha_equal(self.rhs, other.rhs)
                and tuple(self.deps) == tuple(other.deps)
                and len(self.hyps) == len(other.hyps)
                and all(a[0] == b[0] and alpha_equal(a[1], b[1]) and alpha_equal(a[2], b[2])
                        for a, b in zip(self.hyps, other.hyps))
                and len(self.steps) == len(other.steps)
                and all(_step_eq(a, b) for a, b in zip(self.steps, other.steps)))


def _step_eq(a, b) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, (ApplyBothSides, Trans)):
        return alpha_equal(a.arg if isinstance(a, ApplyBothSides) else a.mid,
                           b.arg if isinstance(b, ApplyBothSides) else b.mid)
    if isinstance(a, UseLemma):
        return (a.lemma, a.side, a.path, a.direction) == (b.lemma, b.side, b.path, b.direction) \
            and len(a.subst) == len(b.subst) \
            and all(x[0] == y[0] and alpha_equal(x[1], y[1]) for x, y in zip(a.subst, b.subst))
    return a == b


def _path(x) -> tuple:
    if not isinstance(x, list):
        raise SexprError(f"expected a path list, got {x!r}")
    try:
        path = tuple(int(p) for p in x)
    except ValueError:
        raise SexprError(f"bad path {x!r}") from None
    if any(p not in (0, 1) for p in path):
        raise SexprError(f"bad path {x!r}")
    return path


def _side(x) -> str:
    if x not in ("l", "r"):
        raise SexprError(f"side must be l or r, got {x!r}")
    return str(x)


def _dir(x) -> str:
    if x not in ("fwd", "bwd"):
        raise SexprError(f"direction must be fwd or bwd, got {x!r}")
    return str(x)


def _term(x):
    if not isinstance(x, Str):
        raise SexprError(f"expected a quoted term, got {x!r}")
    return parse(x)


def step_from_sexpr(x):
    if not isinstance(x, list) or not x:
        raise SexprError(f"bad step {x!r}")
    head, *args = x
    try:
        if head == "Rewrite":
            rule, side, path, *rest = args
            return Rewrite(str(rule), _side(side), _path(path), _dir(rest[0]) if rest else "fwd")
        if head == "Beta":
            side, path = args
            return Beta(_side(side), _path(path))
        if head == "Eta":
            side, path, *rest = args
            return Eta(_side(side), _path(path), _dir(rest[0]) if rest else "fwd")
        if head == "UseLemma":
            name, side, path, *rest = args
            direction = _dir(rest[0]) if rest else "fwd"
            subst = ()
            if len(rest) > 1:
                subst = tuple((str(v), _term(t)) for v, t in rest[1])
            return UseLemma(str(name), _side(side), _path(path), direction, subst)
        if head == "ExtInjective":
            return ExtInjective(str(args[0]) if args else "circ")
        if head == "EmExtend":
            name, *rest = args
            return EmExtend(str(name), str(rest[0]) if rest else "em")
        if head == "ApplyBothSides":
            return ApplyBothSides(_term(args[0]))
        if head == "AbstractBothSides":
            var, ty = args
            return AbstractBothSides(str(var), parse_type(ty))
        if head == "Refl" and not args:
            return Refl()
        if head == "Symm" and not args:
            return Symm()
        if head == "Trans":
            return Trans(_term(args[0]))
    except (ValueError, TypeError, IndexError):
        raise SexprError(f"malformed step {write(x)}") from None
    raise SexprError(f"unknown step {write(x)}")


def _p(path) -> str:
    return "(" + " ".join(str(p) for p in path) + ")"


def step_to_text(s) -> str:
    if isinstance(s, Rewrite):
        return f"(Rewrite {s.rule} {s.side} {_p(s.path)} {s.direction})"
    if isinstance(s, Beta):
        return f"(Beta {s.side} {_p(s.path)})"
    if isinstance(s, Eta):
        return f"(Eta {s.side} {_p(s.path)} {s.direction})"
    if isinstance(s, UseLemma):
        sub = ""
        if s.subst:
            sub = " (" + " ".join(f"({v} {quote(show(t))})" for v, t in s.subst) + ")"
        return f"(UseLemma {s.lemma} {s.side} {_p(s.path)} {s.direction}{sub})"
    if isinstance(s, ExtInjective):
        return f"(ExtInjective {s.const})"
    if isinstance(s, EmExtend):
        return f"(EmExtend {s.lemma} {s.variant})"
    if isinstance(s, ApplyBothSides):
        return f"(ApplyBothSides {quote(show(s.arg))})"
    if isinstance(s, AbstractBothSides):
        return f"(AbstractBothSides {s.var} {quote(show_type(s.type))})"
    if isinstance(s, Refl):
        return "(Refl)"
    if isinstance(s, Symm):
        return "(Symm)"
    if isinstance(s, Trans):
        return f"(Trans {quote(show(s.mid))})"
    raise TypeError(f"not a proof step: {s!r}")


def script_from_text(text: str) -> Script:
    x = read(text)
    if not (isinstance(x, list) and len(x) >= 2 and x[0] == "script"):
        raise SexprError("expected (script NAME ...)")
    name = str(x[1])
    calculus, goal, steps, deps, hyps, post = None, None, [], (), [], ""
    for item in x[2:]:
        if not isinstance(item, list) or not item:
            raise SexprError(f"bad clause {write(item)}")
        key = item[0]
        if key == "calculus":
            calculus = str(item[1])
        elif key == "deps":
            deps = tuple(str(d) for d in item[1:])
        elif key == "hyp":
            hyps.append((str(item[1]), _term(item[2]), _term(item[3])))
        elif key == "postulate":
            post = str(item[1]) if len(item) > 1 else "postulated"
        elif key == "goal":
            goal = (_term(item[1]), _term(item[2]))
        elif key == "steps":
            steps = [step_from_sexpr(s) for s in item[1:]]
        else:
            raise SexprError(f"unknown clause {key!r}")
    if calculus is None or goal is None:
        raise SexprError(f"{name}: calculus and goal are required")
    return Script(name, calculus, goal[0], goal[1], steps, deps, tuple(hyps), post)


def script_to_text(s: Script) -> str:
    lines = [f"(script {s.name}", f"  (calculus {s.calculus})"]
    if s.deps:
        lines.append("  (deps " + " ".join(s.deps) + ")")
    for hname, hl, hr in s.hyps:
        lines.append(f"  (hyp {hname} {quote(show(hl))} {quote(show(hr))})")
    if s.postulate:
        lines.append(f"  (postulate {quote(s.postulate)})")
    lines.append(f"  (goal {quote(show(s.lhs))}")
    lines.append(f"        {quote(show(s.rhs))})")
    if s.steps:
        lines.append("  (steps")
        for st in s.steps:
            lines.append("    " + step_to_text(st))
        lines[-1] += "))"
    else:
        lines.append("  (steps))")
    return "\n".join(lines) + "\n"
