"""Helpers for writing proof scripts: a goal state that records kernel steps.

Every helper runs the step through the kernel immediately, so a script
under construction is always a valid prefix.
"""

from __future__ import annotations

from .kernel import KernelError, LemmaDB, _Context, _step
from .rewrite import RewriteError, normalize, prove_equal
from .sexpr import Script
from .steps import (AbstractBothSides, ApplyBothSides, EmExtend, ExtInjective,
                    Refl, Rewrite, Symm, Trans, UseLemma, on_side)
from .syntax import parse
from .terms import TermError, alpha_equal, positions, subterm


class TacticError(Exception):
    pass


def _t(x):
    return parse(x) if isinstance(x, str) else x


class ProofBuilder:
    def __init__(self, name, calculus, lhs, rhs, db: LemmaDB, hyps=()):
        self.name = name
        self.calculus = calculus
        self.hyps = tuple((n, _t(l), _t(r)) for n, l, r in hyps)
        self.start = (_t(lhs), _t(rhs))
        self.goals = [self.start]
        self.steps = []
        self.ctx = _Context(calculus, db, self.hyps, False)

    # state -----------------------------------------------------------------
    @property
    def lhs(self):
        return self.goals[0][0]

    @property
    def rhs(self):
        return self.goals[0][1]

    def side(self, side):
        return self.lhs if side == "l" else self.rhs

    def step(self, st):
        try:
            self.goals = _step(st, self.goals, self.ctx)
        except (KernelError, RewriteError, TermError) as exc:
            raise TacticError(f"{self.name}: {st!r} failed: {exc}\n  goal: {self._goal_text()}") from None
        self.steps.append(st)
        return self

    def _goal_text(self):
        from .syntax import show
        if not self.goals:
            return "(none)"
        return f"{show(self.lhs)}  =  {show(self.rhs)}"

    def find(self, side, target, nth=0):
        target = _t(target)
        term = self.side(side)
        hits = [p for p in positions(term) if alpha_equal(subterm(term, p), target)]
        if len(hits) <= nth:
            raise TacticError(f"{self.name}: {target!r} not found on side {side}\n  goal: {self._goal_text()}")
        return hits[nth]

    # steps -----------------------------------------------------------------
    def _first(self, make, side):
        term = self.side(side)
        for p in positions(term):
            st = make(p)
            try:
                _step(st, self.goals, self.ctx)
            except (KernelError, RewriteError, TermError):
                continue
            return self.step(st)
        raise TacticError(f"{self.name}: nothing applies on side {side}: {make(())!r}\n"
                          f"  goal: {self._goal_text()}")

    def rw(self, rule, side="l", at=None, direction="fwd", path=None, nth=0):
        if path is None and at is not None:
            path = self.find(side, at, nth)
        if path is None:
            return self._first(lambda p: Rewrite(rule, side, p, direction), side)
        return self.step(Rewrite(rule, side, tuple(path), direction))

    def use(self, lemma, side="l", at=None, direction="fwd", subst=(), path=None, nth=0):
        subst = tuple((v, _t(t)) for v, t in (subst.items() if isinstance(subst, dict) else subst))
        if path is None and at is not None:
            path = self.find(side, at, nth)
        if path is None:
            return self._first(lambda p: UseLemma(lemma, side, p, direction, subst), side)
        return self.step(UseLemma(lemma, side, tuple(path), direction, subst))

    def norm(self, side="both", rules=None, fuel=10000):
        for s in (("l", "r") if side == "both" else (side,)):
            res = normalize(self.side(s), self.calculus, fuel, rules=rules, side=s)
            for st in res.trace:
                self.step(st)
        return self

    def beta(self, side="both"):
        from .rewrite import BetaRule
        return self.norm(side, rules=[BetaRule()])

    def search(self, budget=50000, lemmas=()):
        proof = prove_equal(self.lhs, self.rhs, self.calculus, budget, lemmas)
        if proof is None:
            raise TacticError(f"{self.name}: search failed\n  goal: {self._goal_text()}")
        for st in proof.steps:
            self.step(st)
        return self

    def ext_inj(self, const="circ"):
        return self.step(ExtInjective(const))

    def trans(self, mid):
        return self.step(Trans(_t(mid)))

    def symm(self):
        return self.step(Symm())

    def refl(self):
        return self.step(Refl())

    def em(self, lemma, variant="em"):
        return self.step(EmExtend(lemma, variant))

    def apply_both(self, arg):
        return self.step(ApplyBothSides(_t(arg)))

    def abstract(self, var, ty):
        from .syntax import parse_type
        return self.step(AbstractBothSides(var, parse_type(ty) if isinstance(ty, str) else ty))

    def close(self):
        """Normalize both sides and close the current goal by reflexivity."""
        self.norm()
        return self.refl()

    def script(self) -> Script:
        if self.goals:
            if len(self.goals) == 1 and alpha_equal(*self.goals[0]):
                self.refl()
            else:
                raise TacticError(f"{self.name}: open goal {self._goal_text()}")
        return Script(self.name, self.calculus, self.start[0], self.start[1],
                      list(self.steps), tuple(sorted(self.ctx.uses)), self.hyps)
