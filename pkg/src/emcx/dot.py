"""Graphviz DOT rendering of a term's syntax tree.

The root sits leftmost and the output edge leaves it to the left; children
follow clockwise from that edge, so with ``rankdir=LR`` the function of an
application is drawn above its argument.  Variable occurrences bound by a
lambda in the term are coloured red, as is the binder itself.
"""

from __future__ import annotations

from .syntax import show_unicode
from .terms import App, Const, Lam, Term, Var


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(t: Term, name: str = "term") -> str:
    lines = [f"digraph {name} {{",
             "  rankdir=LR;",
             "  ordering=out;",
             '  node [shape=circle, fontname="Helvetica"];',
             '  out [shape=point];']
    counter = [0]

    def node(label, red=False, shape=None):
        counter[0] += 1
        nid = f"n{counter[0]}"
        attrs = [f"label={_quote(label)}"]
        if red:
            attrs.append("color=red, fontcolor=red")
        if shape:
            attrs.append(f"shape={shape}")
        lines.append(f"  {nid} [{', '.join(attrs)}];")
        return nid

    def walk(u, bound):
        if isinstance(u, Var):
            return node(u.name, red=u.name in bound, shape="plaintext")
        if isinstance(u, Const):
            return node(show_unicode(u), shape="box")
        if isinstance(u, Lam):
            me = node(f"λ{u.var}:{u.vtype!r}".replace("Nb", "N̄"), red=True)
            child = walk(u.body, bound | {u.var})
            lines.append(f"  {me} -> {child};")
            return me
        assert isinstance(u, App)
        me = node("@")
        f = walk(u.fun, bound)
        a = walk(u.arg, bound)
        lines.append(f"  {me} -> {f};")
        lines.append(f"  {me} -> {a};")
        return me

    root = walk(t, frozenset())
    lines.append(f"  out -> {root} [dir=back];")
    lines.append("}")
    return "\n".join(lines) + "\n"
