"""Named derived terms.

Every combinator is stored as a parameter list and a literal body; ``build``
substitutes arguments for a prefix of the parameters, and with no arguments
returns the closed term (the body abstracted over all parameters).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .terms import (EEE, App, Const, E, Lam, N, NB, Term, TermError, Type,
                    Var, fresh_name, free_vars, infer_type, is_subtype, subst_many)


class ArityMismatch(TermError):
    pass


class CombinatorTypeMismatch(TermError):
    pass


circ, bullet, dot, star = Const("circ"), Const("bullet"), Const("dot"), Const("star")
cvx = Const("cvx")
ONE, ZERO = Const("1"), Const("0")

a = Var("a", N)
e, x, y = Var("e", E), Var("x", E), Var("y", E)
ub, vb, wb = Var("b", NB), Var("c", NB), Var("d", NB)


def _abs(params, body):
    for name, ty in reversed(list(params)):
        body = Lam(name, ty, body)
    return body


def _lam_e(body_fn, *parts):
    """``\\e:E.\\x:E. body_fn(e, x)`` with binders fresh for ``parts``."""
    avoid = set()
    for p in parts:
        avoid |= free_vars(p)
    en = fresh_name("e", avoid)
    xn = fresh_name("x", avoid | {en})
    return Lam(en, E, Lam(xn, E, body_fn(Var(en, E), Var(xn, E))))


def _shifted(av, ev, xv):
    """``(* a)^{a^e x} e``, the base point seen from ``a^e x``."""
    return circ(star(av), circ(av, ev, xv), ev)


# bodies of the approximate operations, with ``a : N`` free
ASUM_BODY = _abs([("e", E), ("x", E), ("y", E)],
                circ(star(a), e, circ(a, circ(a, e, x), y)))
ADIF_BODY = _abs([("e", E), ("x", E), ("y", E)],
                circ(star(a), circ(a, e, x), circ(a, e, y)))
AINV_BODY = _abs([("e", E), ("x", E)], circ(star(a), circ(a, e, x), e))

NSUM_BODY = _abs([("b", NB), ("c", NB), ("d", NB)],
                cvx(star(a), ub, cvx(a, cvx(a, ub, vb), wb)))
NDIF_BODY = _abs([("b", NB), ("c", NB), ("d", NB)],
                cvx(star(a), cvx(a, ub, vb), cvx(a, ub, wb)))
NINV_BODY = _abs([("b", NB), ("c", NB)], cvx(star(a), cvx(a, ub, vb), ub))


def mul_e(f: Term, g: Term) -> Term:
    """``f . g = \\e.\\x. f e (g e x)`` on ``E -> E -> E``."""
    return _lam_e(lambda ev, xv: f(ev, g(ev, xv)), f, g)


def diff_b(f: Term) -> Term:
    """``(- f) : N -> E -> E -> E``; ``diff_b(f)(A)`` is ``A - f``."""
    an = fresh_name("a", free_vars(f))
    av = Var(an, N)
    return Lam(an, N, _lam_e(lambda ev, xv: f(circ(av, ev, xv), _shifted(av, ev, xv)), f, av))


def minus(av: Term, f: Term) -> Term:
    """``A - f`` with the abstraction over the node already instantiated."""
    return _lam_e(lambda ev, xv: f(circ(av, ev, xv), _shifted(av, ev, xv)), f, av)


def plus(av: Term, f: Term) -> Term:
    """``A + f = A - (f . iotB)``"""
    return minus(av, mul_e(f, Const("iotB")))


def convex_comb(c: Term, av: Term, f: Term) -> Term:
    """``C^A f = A - ((A - f) . circ C)``"""
    return minus(av, mul_e(minus(av, f), circ(c)))


@dataclass(frozen=True)
class Combinator:
    name: str
    params: tuple                  # ((name, type), ...)
    body: Term
    doc: str = ""

    @property
    def closed(self) -> Term:
        return _abs(list(self.params), self.body)

    def build(self, args=()) -> Term:
        args = list(args)
        if len(args) > len(self.params):
            raise ArityMismatch(f"{self.name} takes {len(self.params)} arguments, "
                                f"got {len(args)}")
        sub = {}
        for (pname, ptype), arg in zip(self.params, args):
            got = infer_type(arg)
            if not is_subtype(got, ptype):
                raise CombinatorTypeMismatch(
                    f"{self.name}: argument {pname} wants {ptype!r}, got {got!r}")
            sub[pname] = arg
        rest = list(self.params[len(args):])
        body = subst_many(_abs(rest, self.body), sub) if sub else _abs(rest, self.body)
        return body


F, G = Var("F", EEE), Var("G", EEE)
b_ = Var("b", N)
c_ = Var("c", N)
A_ = Var("A", N)

REGISTRY: dict = {}


def _reg(name, params, body, doc=""):
    REGISTRY[name] = Combinator(name, tuple(params), body, doc)


_reg("bar0", [], _lam_e(lambda ev, xv: ev), "\\e.\\x. e")
_reg("bar1", [], _lam_e(lambda ev, xv: xv), "\\e.\\x. x")
_reg("mulE", [("F", EEE), ("G", EEE)], mul_e(F, G), "F . G = \\e.\\x. F e (G e x)")
_reg("diff", [("a", N), ("b", N)], minus(a, circ(b_)), "(-) a b = a - circ b")
_reg("diffB", [("F", EEE), ("a", N)], minus(a, F), "(- F) a = a - F")
_reg("diffAB", [("a", N), ("b", N)], minus(a, circ(b_)), "a - circ b")
_reg("Sigma", [("a", N)], ASUM_BODY, "approximate sum")
_reg("Delta", [("a", N)], ADIF_BODY, "approximate difference")
_reg("iota", [("a", N)], AINV_BODY, "approximate inverse")
_reg("sumAB", [("a", N), ("F", EEE)], plus(a, F), "a + F = a - (F . iotB)")
_reg("newdil", [("c", N), ("a", N), ("F", EEE)], convex_comb(c_, a, F),
     "c^a F = a - ((a - F) . circ c)")
_reg("sigma", [("a", N)], NSUM_BODY, "approximate sum on nodes")
_reg("delta", [("a", N)], NDIF_BODY, "approximate difference on nodes")
_reg("jinv", [("a", N)], NINV_BODY, "approximate inverse on nodes")
_reg("oplus", [("x", E), ("y", E), ("z", E)],
     Const("SigB")(x, y, Var("z", E)), "y (+)_x z = SigB x y z")
_reg("ominus", [("x", E), ("y", E)], Const("iotB")(x, y), "(-)_x y = iotB x y")
_reg("scal", [("a", NB), ("x", E), ("y", E)],
     circ(Var("a", NB), x, y), "a ._x y = circ a x y")
_reg("infdil", [("A", N), ("a", N)],
     _abs([("e", E), ("x", E), ("y", E)],
         bullet(a, e, circ(A_, circ(a, e, x), circ(a, e, y)))),
     "circ^{a,e} A x y = bullet a e (circ A (circ a e x) (circ a e y))")
_reg("minusOne", [], Const("jB")(ZERO, ONE), "-1 = jB 0 1")
_reg("boolTrue", [], ZERO, "TRUE = 0")
_reg("boolFalse", [], ONE, "FALSE = 1")
_reg("ifthenelse", [("a", NB), ("b", NB), ("c", NB)],
     cvx(Var("a", NB), ub, vb), "IFTHENELSE a b c = cvx a b c")
_reg("succ", [("a", NB)], Const("sigB")(ZERO, Var("a", NB), ONE), "SUCC a = sigB 0 a 1")

NAMES = tuple(list(REGISTRY)[:10] + ["natural"] + list(REGISTRY)[10:])


@lru_cache(maxsize=None)
def natural(n: int) -> Term:
    """``bar0`` for 0, else ``1 + natural(n - 1)``, unfolded."""
    if n < 0:
        raise ValueError("naturals start at 0")
    if n == 0:
        return REGISTRY["bar0"].closed
    return plus(ONE, natural(n - 1))


def build(name: str, args=()) -> Term:
    """The combinator ``name`` with ``args`` substituted for its first parameters.

    ``natural`` takes a single Python integer.
    """
    if name == "natural":
        if len(args) != 1 or not isinstance(args[0], int):
            raise ArityMismatch("natural takes one integer")
        return natural(args[0])
    try:
        comb = REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown combinator {name!r}") from None
    return comb.build(args)


def by_ascii_name(name: str) -> Term:
    """Closed combinator for a script / CLI identifier (``natural3`` for n = 3)."""
    m = re.fullmatch(r"natural(\d+)", name)
    if m:
        return natural(int(m.group(1)))
    return build(name)


def signature(name: str):
    if name == "natural":
        return (("n", int),)
    return REGISTRY[name].params


def is_bin(t: Term, calculus="emergent", budget: int = 50000, lemmas=None):
    """Try to prove ``t . bar0 = bar0``; returns ``(verdict, proof)``.

    ``verdict`` is ``True`` when a proof was found, otherwise ``"unknown"``.
    The goal is first normalized with the ``lemmas`` (``(name, lhs, rhs)``,
    used left to right) added to the rules; by default these are the corpus
    lemmas that fix the diagonal.  Failing that, ``prove_equal`` searches.  A proof
    using lemmas replays against a database holding them.
    """
    from .rewrite import LEVELS, LemmaRule, calculus_of, normalize, prove_equal
    from .steps import Proof, Refl
    from .terms import alpha_equal
    bar0 = REGISTRY["bar0"].closed
    goal = mul_e(t, bar0)
    calc = calculus_of(calculus)
    if lemmas is None:
        from .corpus import statements
        db = statements()
        lemmas = [(n, db[n].lhs, db[n].rhs) for n in DIAGONAL_LEMMAS
                  if LEVELS[db[n].calculus] <= calc.level]
    rules = calc.rules + [LemmaRule(n, l, r) for n, l, r in lemmas]
    res = normalize(goal, calc, rules=rules)
    if alpha_equal(res.term, bar0):
        return True, Proof(goal, bar0, res.trace + [Refl()])
    proof = prove_equal(goal, bar0, calculus, budget)
    if proof is not None:
        return True, proof
    return "unknown", None


DIAGONAL_LEMMAS = ("iotb_fix",)
