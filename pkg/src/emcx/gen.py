"""Random well-typed terms, for property tests.

Besides plain constructions the generator plants instances of rule
left-hand sides and beta redexes, so that most generated terms have
something to rewrite.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .rewrite import PatternRule, metas, rules_for
from .terms import (App, Arrow, Const, E, EEE, Lam, N, NB, SIGNATURES, Type,
                    Var, infer_type, is_subtype, subst_many)

CONTEXT = (Var("e", E), Var("x", E), Var("y", E), Var("a", N), Var("b", N),
           Var("c", N), Var("f", EEE))


def _peel(sig: Type):
    """``(argument types, result)`` for every partial application of ``sig``."""
    args = []
    yield (), sig
    while isinstance(sig, Arrow):
        args.append(sig.dom)
        sig = sig.cod
        yield tuple(args), sig


@lru_cache(maxsize=None)
def _producers(calculus: str):
    consts = rules_for(calculus).constants
    out = []
    for name in sorted(consts):
        for sig in SIGNATURES[name]:
            for args, res in _peel(sig):
                out.append((name, args, res))
    return out


@lru_cache(maxsize=None)
def _planted(calculus: str):
    out = []
    for r in rules_for(calculus).all_rules():
        if isinstance(r, PatternRule) and r.can_forward:
            try:
                out.append((r, infer_type(r.lhs)))
            except Exception:
                continue
    return out


class TermGen:
    def __init__(self, calculus: str = "em-convex", seed=0, max_depth: int = 4):
        self.calc = calculus
        self.rng = random.Random(seed)
        self.max_depth = max_depth
        self.counter = 0

    def _fresh(self):
        self.counter += 1
        return f"v{self.counter}"

    def leaf(self, ty, ctx):
        pool = [v for v in ctx if is_subtype(v.type, ty)]
        if is_subtype(N, ty):
            pool.append(Const("1"))
        if ty == NB and "0" in rules_for(self.calc).constants:
            pool.append(Const("0"))
        if pool:
            return self.rng.choice(pool)
        return None

    def term(self, ty: Type = E, depth=None, ctx=CONTEXT):
        depth = self.max_depth if depth is None else depth
        rng = self.rng
        if depth <= 0 or rng.random() < 0.2:
            t = self.leaf(ty, ctx)
            if t is not None:
                return t
        depth = max(depth, 1)
        roll = rng.random()
        if roll < 0.15:
            planted = [(r, t) for r, t in _planted(self.calc) if t == ty]
            if planted:
                r, _ = rng.choice(planted)
                sub = {}
                for m in sorted(metas(r.lhs)):
                    mty = _meta_type(r.lhs, m)
                    sub[m] = self.term(mty, depth - 1, ctx)
                return subst_many(r.lhs, sub)
        if roll < 0.25:
            dom = rng.choice((E, N, NB))
            v = Var(self._fresh(), dom)
            body = self.term(ty, depth - 1, ctx + (v,))
            return App(Lam(v.name, dom, body), self.term(dom, depth - 1, ctx))
        if isinstance(ty, Arrow) and roll < 0.45:
            v = Var(self._fresh(), ty.dom)
            return Lam(v.name, ty.dom, self.term(ty.cod, depth - 1, ctx + (v,)))
        cands = [(n, args) for n, args, res in _producers(self.calc) if res == ty]
        if not cands:
            t = self.leaf(ty, ctx)
            if t is not None:
                return t
            v = Var(self._fresh(), ty.dom)
            return Lam(v.name, ty.dom, self.term(ty.cod, depth - 1, ctx + (v,)))
        name, args = rng.choice(cands)
        t = Const(name)
        for a in args:
            t = App(t, self.term(a, depth - 1, ctx))
        return t


def _meta_type(t, name):
    from .terms import free_var_types
    return free_var_types(t)[name]


def random_term(seed, calculus: str = "em-convex", ty: Type = E, max_depth: int = 4):
    return TermGen(calculus, seed, max_depth).term(ty)
