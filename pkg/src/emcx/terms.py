"""Types and terms of the two-sorted dilation lambda calculus.

Terms are immutable.  Variables carry their own type, so an open term can be
type-checked without an enclosing context.  Binders are named; alpha
equivalence is decided through a de Bruijn key that is cached on each node.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional


class TermError(Exception):
    """Base class for typing and construction errors."""


class UnboundVariable(TermError):
    pass


class ApplicationMismatch(TermError):
    pass


class NotAFunction(TermError):
    pass


class TypeMismatch(TermError):
    pass


# --------------------------------------------------------------------------- #
# types
# --------------------------------------------------------------------------- #

class Type:
    __slots__ = ()

    def __rshift__(self, other: "Type") -> "Arrow":
        return Arrow(self, other)


class Atom(Type):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __eq__(self, other):
        return isinstance(other, Atom) and other.name == self.name

    def __hash__(self):
        return hash(("atom", self.name))

    def __repr__(self):
        return self.name


class Arrow(Type):
    __slots__ = ("dom", "cod")

    def __init__(self, dom: Type, cod: Type):
        self.dom = dom
        self.cod = cod

    def __eq__(self, other):
        return (isinstance(other, Arrow) and other.dom == self.dom
                and other.cod == self.cod)

    def __hash__(self):
        return hash(("arrow", self.dom, self.cod))

    def __repr__(self):
        dom = f"({self.dom!r})" if isinstance(self.dom, Arrow) else repr(self.dom)
        return f"{dom} -> {self.cod!r}"


E = Atom("E")
N = Atom("N")
NB = Atom("Nb")


def arrows(*ts: Type) -> Type:
    """Right-associated arrow type ``t0 -> t1 -> ... -> tn``."""
    out = ts[-1]
    for t in reversed(ts[:-1]):
        out = Arrow(t, out)
    return out


EEE = arrows(E, E, E)


def is_subtype(s: Type, t: Type) -> bool:
    """N is accepted where Nb is expected; arrows are contra/covariant."""
    if s == t:
        return True
    if s == N and t == NB:
        return True
    if isinstance(s, Arrow) and isinstance(t, Arrow):
        return is_subtype(t.dom, s.dom) and is_subtype(s.cod, t.cod)
    return False


def is_node_type(t: Type) -> bool:
    return t == N or t == NB


def extend_type(t: Type) -> Type:
    """Replace every occurrence of N by Nb."""
    if t == N:
        return NB
    if isinstance(t, Arrow):
        return Arrow(extend_type(t.dom), extend_type(t.cod))
    return t


# --------------------------------------------------------------------------- #
# constants
# --------------------------------------------------------------------------- #

# ASCII name -> list of admissible signatures, tried in order when a constant
# heads an application spine.  The first signature is the narrowest.
SIGNATURES: dict[str, list[Type]] = {
    "1": [N],
    "0": [NB],
    "circ": [arrows(N, E, E, E), arrows(NB, E, E, E)],
    "bullet": [arrows(N, E, E, E)],
    "dot": [arrows(N, N, N), arrows(NB, NB, NB)],
    "star": [arrows(N, N)],
    "cvx": [arrows(N, N, N, N), arrows(NB, NB, NB, NB)],
    "icvx": [arrows(N, N, N, N), arrows(N, NB, NB, NB)],
    # approximate operations as definitional constants (finite for N arguments)
    "Sig": [arrows(N, E, E, E, E), arrows(NB, E, E, E, E)],
    "Del": [arrows(N, E, E, E, E), arrows(NB, E, E, E, E)],
    "iot": [arrows(N, E, E, E), arrows(NB, E, E, E)],
    "sig": [arrows(N, NB, NB, NB, NB), arrows(NB, NB, NB, NB, NB)],
    "del": [arrows(N, NB, NB, NB, NB), arrows(NB, NB, NB, NB, NB)],
    "jj": [arrows(N, NB, NB, NB), arrows(NB, NB, NB, NB)],
    # emergent constants
    "SigB": [arrows(E, E, E, E)],
    "DelB": [arrows(E, E, E, E)],
    "iotB": [arrows(E, E, E)],
    "sigB": [arrows(NB, NB, NB, NB)],
    "delB": [arrows(NB, NB, NB, NB)],
    "jB": [arrows(NB, NB, NB)],
}

CONSTANTS = frozenset(SIGNATURES)


# --------------------------------------------------------------------------- #
# terms
# --------------------------------------------------------------------------- #

class Term:
    __slots__ = ("_hash", "_key", "_fv", "_type", "_fvt")

    def _init_cache(self):
        self._hash = None
        self._key = None
        self._fv = None
        self._type = None
        self._fvt = None

    # application by call syntax: f(a, b) == App(App(f, a), b)
    def __call__(self, *args: "Term") -> "Term":
        out = self
        for a in args:
            out = App(out, a)
        return out

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._struct())
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Term) and self._struct() == other._struct()

    def __repr__(self):
        from .syntax import show
        return f"<{show(self)}>"


class Var(Term):
    __slots__ = ("name", "type")

    def __init__(self, name: str, type: Type):
        self._init_cache()
        self.name = name
        self.type = type

    def _struct(self):
        return ("v", self.name, self.type)


class Const(Term):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if name not in CONSTANTS:
            raise TermError(f"unknown constant {name!r}")
        self._init_cache()
        self.name = name

    def _struct(self):
        return ("c", self.name)


class App(Term):
    __slots__ = ("fun", "arg")

    def __init__(self, fun: Term, arg: Term):
        self._init_cache()
        self.fun = fun
        self.arg = arg

    def _struct(self):
        return ("a", self.fun, self.arg)


class Lam(Term):
    __slots__ = ("var", "vtype", "body")

    def __init__(self, var: str, vtype: Type, body: Term):
        self._init_cache()
        self.var = var
        self.vtype = vtype
        self.body = body

    def _struct(self):
        return ("l", self.var, self.vtype, self.body)


def lam(*binders_and_body) -> Term:
    """``lam(x, y, body)`` for typed variables x, y abstracts right to left."""
    *binders, body = binders_and_body
    for v in reversed(binders):
        body = Lam(v.name, v.type, body)
    return body


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split ``h a1 ... an`` into ``(h, [a1, ..., an])``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


# --------------------------------------------------------------------------- #
# free variables, alpha equivalence, ordering
# --------------------------------------------------------------------------- #

def free_vars(t: Term) -> frozenset:
    """Free variable names of ``t``."""
    if t._fv is None:
        if isinstance(t, Var):
            fv = frozenset([t.name])
        elif isinstance(t, Const):
            fv = frozenset()
        elif isinstance(t, App):
            fv = free_vars(t.fun) | free_vars(t.arg)
        else:
            fv = free_vars(t.body) - {t.var}
        t._fv = fv
    return t._fv


def free_var_types(t: Term) -> dict[str, Type]:
    out: dict[str, Type] = {}

    def walk(u, bound):
        if isinstance(u, Var):
            if u.name not in bound:
                out.setdefault(u.name, u.type)
        elif isinstance(u, App):
            walk(u.fun, bound)
            walk(u.arg, bound)
        elif isinstance(u, Lam):
            walk(u.body, bound | {u.var})

    walk(t, frozenset())
    return out


def alpha_key(t: Term):
    """Hashable de Bruijn form; equal keys iff alpha-equivalent terms."""
    if t._key is None:
        t._key = _key(t, ())
    return t._key


def _key(t, scope):
    if isinstance(t, Var):
        for i in range(len(scope) - 1, -1, -1):
            if scope[i] == t.name:
                return ("b", len(scope) - 1 - i)
        return ("v", t.name, t.type)
    if isinstance(t, Const):
        return ("c", t.name)
    if isinstance(t, App):
        return ("a", _key(t.fun, scope) if scope else alpha_key(t.fun),
                _key(t.arg, scope) if scope else alpha_key(t.arg))
    return ("l", t.vtype, _key(t.body, scope + (t.var,)))


def alpha_equal(t1: Term, t2: Term) -> bool:
    return t1 is t2 or alpha_key(t1) == alpha_key(t2)


def order_key(t: Term):
    """Total order: constants < variables by name < composite terms."""
    if isinstance(t, Const):
        return (0, t.name)
    if isinstance(t, Var):
        return (1, t.name, repr(t.type))
    return (2, size(t), repr(alpha_key(t)))


def size(t: Term) -> int:
    if isinstance(t, App):
        return 1 + size(t.fun) + size(t.arg)
    if isinstance(t, Lam):
        return 1 + size(t.body)
    return 1


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    name = base
    while name in avoid:
        name += "'"
    return name


# --------------------------------------------------------------------------- #
# substitution
# --------------------------------------------------------------------------- #

def subst_many(t: Term, mapping: Mapping[str, Term]) -> Term:
    """Simultaneous capture-avoiding substitution of free variables."""
    if not mapping:
        return t
    fv = free_vars(t)
    mapping = {k: v for k, v in mapping.items() if k in fv}
    if not mapping:
        return t
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, App):
        return App(subst_many(t.fun, mapping), subst_many(t.arg, mapping))
    if isinstance(t, Lam):
        incoming = set()
        for v in mapping.values():
            incoming |= free_vars(v)
        var, body = t.var, t.body
        if var in incoming:
            new = fresh_name(var, incoming | free_vars(body) | set(mapping))
            body = subst_many(body, {var: Var(new, t.vtype)})
            var = new
        return Lam(var, t.vtype, subst_many(body, mapping))
    return t


def substitute(t: Term, name: str, vtype: Type, replacement: Term) -> Term:
    """``t[name := replacement]``; the replacement must fit ``vtype``."""
    rt = infer_type(replacement)
    if not is_subtype(rt, vtype):
        raise TypeMismatch(f"cannot substitute a term of type {rt!r} "
                           f"for {name}:{vtype!r}")
    return subst_many(t, {name: replacement})


# --------------------------------------------------------------------------- #
# type checking
# --------------------------------------------------------------------------- #

def infer_type(t: Term, context: Optional[Mapping[str, Type] | list] = None) -> Type:
    """Type of ``t`` by the abstraction and application rules.

    With ``context`` given, every free variable must be bound there with its
    annotated type; without it, free variables take their own annotation.
    """
    if context is not None:
        ctx = dict(context)
        for name, ty in free_var_types(t).items():
            if name not in ctx:
                raise UnboundVariable(name)
            if ctx[name] != ty:
                raise TypeMismatch(f"{name} is {ty!r} but the context says {ctx[name]!r}")
    return _infer(t)


def _infer(t: Term) -> Type:
    # variables carry their type, so the type of an open subterm does not
    # depend on where it sits; the result is cached on the node
    if t._type is not None:
        return t._type
    if isinstance(t, Var):
        ty = t.type
    elif isinstance(t, Lam):
        bt = _infer(t.body)
        occ = _occurrence_types(t.body).get(t.var)
        if occ is not None and occ != t.vtype:
            raise TypeMismatch(f"{t.var} bound at {t.vtype!r} but used at {occ!r}")
        ty = Arrow(t.vtype, bt)
    else:
        head, args = spine(t)
        arg_types = [_infer(a) for a in args]
        if isinstance(head, Const):
            sigs = SIGNATURES[head.name]
            ty = None
            for sig in sigs:
                ty = _apply_sig(sig, arg_types)
                if ty is not None:
                    break
            if ty is None:
                if not any(_arity_ok(s, len(args)) for s in sigs):
                    raise NotAFunction(f"{head.name} applied to too many arguments")
                raise ApplicationMismatch(
                    f"{head.name} cannot take arguments of types {arg_types!r}")
        else:
            ty = _infer(head)
            for at in arg_types:
                if not isinstance(ty, Arrow):
                    raise NotAFunction(f"application of a term of type {ty!r}")
                if not is_subtype(at, ty.dom):
                    raise ApplicationMismatch(
                        f"argument of type {at!r} where {ty.dom!r} expected")
                ty = ty.cod
        _occurrence_types(t)
    t._type = ty
    return ty


def _occurrence_types(t: Term) -> dict:
    """Free variable name -> type, rejecting one name used at two types."""
    if t._fvt is None:
        if isinstance(t, Var):
            out = {t.name: t.type}
        elif isinstance(t, Const):
            out = {}
        elif isinstance(t, App):
            left = _occurrence_types(t.fun)
            right = _occurrence_types(t.arg)
            out = dict(left)
            for k, v in right.items():
                if k in out and out[k] != v:
                    raise TypeMismatch(f"{k} used at {out[k]!r} and {v!r}")
                out[k] = v
        else:
            out = dict(_occurrence_types(t.body))
            out.pop(t.var, None)
        t._fvt = out
    return t._fvt


def _arity_ok(sig: Type, n: int) -> bool:
    for _ in range(n):
        if not isinstance(sig, Arrow):
            return False
        sig = sig.cod
    return True


def _apply_sig(sig: Type, arg_types: list) -> Optional[Type]:
    for at in arg_types:
        if not isinstance(sig, Arrow) or not is_subtype(at, sig.dom):
            return None
        sig = sig.cod
    return sig


def well_typed(t: Term) -> bool:
    try:
        infer_type(t)
    except TermError:
        return False
    return True


# --------------------------------------------------------------------------- #
# paths
# --------------------------------------------------------------------------- #

class PathInvalid(TermError):
    pass


def subterm(t: Term, path) -> Term:
    for i in path:
        if isinstance(t, App):
            t = t.fun if i == 0 else t.arg
        elif isinstance(t, Lam) and i == 0:
            t = t.body
        else:
            raise PathInvalid(f"no child {i} at {t!r}")
    return t


def replace_at(t: Term, path, new: Term) -> Term:
    """Replace the subterm at ``path``.  Binders above are kept as they are,
    so ``new`` may mention them freely."""
    if not path:
        return new
    i, rest = path[0], path[1:]
    if isinstance(t, App):
        if i == 0:
            return App(replace_at(t.fun, rest, new), t.arg)
        if i == 1:
            return App(t.fun, replace_at(t.arg, rest, new))
    elif isinstance(t, Lam) and i == 0:
        return Lam(t.var, t.vtype, replace_at(t.body, rest, new))
    raise PathInvalid(f"no child {i} at {t!r}")


def positions(t: Term, path=()):
    """All paths in leftmost-outermost (pre-)order."""
    yield path
    if isinstance(t, App):
        yield from positions(t.fun, path + (0,))
        yield from positions(t.arg, path + (1,))
    elif isinstance(t, Lam):
        yield from positions(t.body, path + (0,))


def bound_along(t: Term, path) -> set:
    """Names bound by binders strictly above ``path``."""
    out = set()
    for i in path:
        if isinstance(t, Lam):
            out.add(t.var)
            t = t.body
        elif isinstance(t, App):
            t = t.fun if i == 0 else t.arg
    return out
