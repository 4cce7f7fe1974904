"""The proof kernel: replays step lists on equality goals.

The trusted base is small: single rule applications (``apply_rule``),
substitution into lemma statements, alpha-equality, the extension map of
finite terms and its (em) inference.  Search results are never trusted;
they are replayed here like any hand-written script.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .extension import NotFinite, em_step, is_finite
from .rewrite import (BetaRule, LEVELS, Rule, RewriteError, apply_rule,
                      calculus_of, constants_of, schematic)
from .sexpr import Script
from .steps import (AbstractBothSides, ApplyBothSides, Beta, EmExtend, Eta,
                    ExtInjective, Proof, Refl, Rewrite, Symm, Trans, UseLemma)
from .terms import (App, Const, Lam, N, NB, Term, TermError, Var, alpha_equal,
                    fresh_name, free_vars, infer_type, is_subtype, replace_at,
                    subst_many, subterm)


class KernelError(Exception):
    pass


class StepFailed(KernelError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"step {index}: {reason}")
        self.index = index
        self.reason = reason


class MissingDependency(KernelError):
    pass


class CyclicDependency(KernelError):
    pass


@dataclass
class Lemma:
    """A checked (or to-be-checked) equation."""
    name: str
    calculus: str
    lhs: Term
    rhs: Term
    hyps: tuple = ()
    verified: bool = False
    postulate: bool = False        # accepted on the model oracle, not replayed

    @property
    def conditional(self) -> bool:
        return bool(self.hyps)


@dataclass
class Verdict:
    ok: bool
    step: Optional[int] = None     # index of the failing step
    reason: str = ""
    steps: int = 0
    uses: tuple = ()               # lemmas relied on

    def __bool__(self):
        return self.ok


class LemmaDB:
    def __init__(self, lemmas=()):
        self.lemmas: dict = {}
        for lem in lemmas:
            self.add(lem)

    def add(self, lemma: Lemma):
        self.lemmas[lemma.name] = lemma

    def __contains__(self, name):
        return name in self.lemmas

    def __getitem__(self, name) -> Lemma:
        return self.lemmas[name]

    def __iter__(self):
        return iter(self.lemmas.values())

    def __len__(self):
        return len(self.lemmas)


# --------------------------------------------------------------------------- #
# step semantics
# --------------------------------------------------------------------------- #

def _sides(goal, side):
    lhs, rhs = goal
    return lhs if side == "l" else rhs


def _with_side(goal, side, new):
    return (new, goal[1]) if side == "l" else (goal[0], new)


def _same_type(a: Term, b: Term) -> bool:
    ta, tb = infer_type(a), infer_type(b)
    return is_subtype(ta, tb) or is_subtype(tb, ta)


def _replace_checked(term: Term, path, new_sub: Term) -> Term:
    old = subterm(term, path)
    out = replace_at(term, path, new_sub)
    to, tn = infer_type(old), infer_type(new_sub)
    if not (is_subtype(tn, to) or is_subtype(to, tn)):
        raise KernelError(f"rewrite changes the type {to!r} to {tn!r}")
    infer_type(out)
    return out


class _Context:
    def __init__(self, calculus, db: Optional[LemmaDB], hyps, trust_db: bool):
        self.calc = calculus_of(calculus)
        self.db = db
        self.hyps = {name: (l, r) for name, l, r in hyps}
        self.trust_db = trust_db
        self.uses = set()

    def lemma(self, name: str) -> Lemma:
        if self.db is None or name not in self.db:
            raise MissingDependency(f"unknown lemma {name}")
        lem = self.db[name]
        if not (lem.verified or self.trust_db):
            raise MissingDependency(f"lemma {name} is not verified")
        if LEVELS[lem.calculus] > self.calc.level:
            raise KernelError(f"lemma {name} lives in {lem.calculus}, "
                              f"not available in {self.calc.name}")
        self.uses.add(name)
        return lem

    def rule(self, name: str) -> Rule:
        r = self.calc.rule(name)
        for dep in r.requires:
            self.lemma(dep)
        return r


def _use_lemma(step: UseLemma, goal, ctx: _Context):
    from .rewrite import PatternRule
    if step.lemma in ctx.hyps:
        l, r = ctx.hyps[step.lemma]
        rule = PatternRule(step.lemma, l, r)
    else:
        lem = ctx.lemma(step.lemma)
        if lem.conditional:
            raise KernelError(f"{lem.name} holds under hypotheses and cannot be used")
        rule = PatternRule(lem.name, schematic(lem.lhs), schematic(lem.rhs))
    extra = {}
    names = free_vars(rule.lhs) | free_vars(rule.rhs)
    for var, t in step.subst:
        key = "?" + var
        if key not in names:
            raise KernelError(f"{step.lemma} has no variable {var}")
        extra[key] = t
    side = _sides(goal, step.side)
    sub = subterm(side, step.path)
    new = rule.apply_with(sub, step.direction, extra)
    return _with_side(goal, step.side, _replace_checked(side, step.path, new))


def _ext_injective(step: ExtInjective, goal, ctx: _Context):
    if step.const not in ("circ", "bullet"):
        raise KernelError("ExtInjective works through circ or bullet only")
    lhs, rhs = goal
    allowed = (N, NB) if ctx.calc.ext_on_nbar else (N,)
    for t in (lhs, rhs):
        if infer_type(t) not in allowed:
            raise KernelError(f"{t!r} is not a node term")
    c = Const(step.const)
    return (c(lhs), c(rhs))


def _em_extend(step: EmExtend, goal, ctx: _Context):
    if step.variant == "em":
        if ctx.calc.level < LEVELS["emergent"]:
            raise KernelError("(em) needs the emergent calculus")
    elif step.variant == "emc":
        if ctx.calc.level < LEVELS["n-convex"]:
            raise KernelError("the node-only (em) needs the n-convex calculus")
    else:
        raise KernelError(f"unknown extension variant {step.variant}")
    lem = ctx.lemma(step.lemma)
    if lem.conditional:
        raise KernelError(f"{lem.name} holds under hypotheses")
    try:
        l2, r2 = em_step(lem.lhs, lem.rhs, variant=step.variant)
    except NotFinite as exc:
        raise KernelError(str(exc)) from None
    if alpha_equal(goal[0], l2) and alpha_equal(goal[1], r2):
        return None
    raise KernelError(f"goal is not the extension of {lem.name}")


def _apply_both(step: ApplyBothSides, goal):
    lhs, rhs = goal
    if not (isinstance(lhs, App) and isinstance(rhs, App)):
        raise KernelError("both sides must be applications")
    if not (alpha_equal(lhs.arg, step.arg) and alpha_equal(rhs.arg, step.arg)):
        raise KernelError("both sides must be applied to the given argument")
    if not is_subtype(infer_type(lhs.fun), infer_type(rhs.fun)) and \
            not is_subtype(infer_type(rhs.fun), infer_type(lhs.fun)):
        raise KernelError("the functions have different types")
    return (lhs.fun, rhs.fun)


def _abstract_both(step: AbstractBothSides, goal):
    lhs, rhs = goal
    if not (isinstance(lhs, Lam) and isinstance(rhs, Lam)):
        raise KernelError("both sides must be abstractions")
    if lhs.vtype != step.type or rhs.vtype != step.type:
        raise KernelError("binder types do not match")
    v = Var(step.var, step.type)
    bodies = []
    for side in (lhs, rhs):
        if side.var != step.var and step.var in free_vars(side):
            raise KernelError(f"{step.var} occurs free")
        bodies.append(subst_many(side.body, {side.var: v}))
    return tuple(bodies)


def _step(step, goals, ctx: _Context):
    goal = goals[0]
    rest = goals[1:]
    if isinstance(step, Rewrite):
        side = _sides(goal, step.side)
        rule = ctx.rule(step.rule)
        new = apply_rule(rule, side, step.path, step.direction, allow_backward=True)
        infer_type(new)
        _check_same(subterm(side, step.path), subterm(new, step.path))
        return [_with_side(goal, step.side, new)] + rest
    if isinstance(step, Beta):
        side = _sides(goal, step.side)
        new = apply_rule(BetaRule(), side, step.path)
        _check_same(subterm(side, step.path), subterm(new, step.path))
        return [_with_side(goal, step.side, new)] + rest
    if isinstance(step, Eta):
        side = _sides(goal, step.side)
        rule = ctx.calc.rule("eta")
        new = apply_rule(rule, side, step.path, step.direction, allow_backward=True)
        _check_same(subterm(side, step.path), subterm(new, step.path))
        return [_with_side(goal, step.side, new)] + rest
    if isinstance(step, UseLemma):
        return [_use_lemma(step, goal, ctx)] + rest
    if isinstance(step, ExtInjective):
        return [_ext_injective(step, goal, ctx)] + rest
    if isinstance(step, EmExtend):
        _em_extend(step, goal, ctx)
        return rest
    if isinstance(step, ApplyBothSides):
        return [_apply_both(step, goal)] + rest
    if isinstance(step, AbstractBothSides):
        return [_abstract_both(step, goal)] + rest
    if isinstance(step, Refl):
        if not alpha_equal(*goal):
            raise KernelError("sides differ")
        return rest
    if isinstance(step, Symm):
        return [(goal[1], goal[0])] + rest
    if isinstance(step, Trans):
        infer_type(step.mid)
        if not _same_type(goal[0], step.mid):
            raise KernelError("intermediate term has the wrong type")
        return [(goal[0], step.mid), (step.mid, goal[1])] + rest
    raise KernelError(f"unknown step {step!r}")


def _check_same(old, new):
    to, tn = infer_type(old), infer_type(new)
    if not (is_subtype(tn, to) or is_subtype(to, tn)):
        raise KernelError(f"type changed from {to!r} to {tn!r}")


def _check_goal(lhs, rhs, calc):
    for t in (lhs, rhs):
        infer_type(t)
        extra = constants_of(t) - calc.constants
        if extra:
            raise KernelError(f"constants {sorted(extra)} are not in {calc.name}")
    if not _same_type(lhs, rhs):
        raise KernelError("the two sides have different types")


def replay(lhs, rhs, steps, calculus, db=None, hyps=(), trust_db=False) -> Verdict:
    """Replay ``steps`` on the goal ``lhs = rhs``."""
    try:
        ctx = _Context(calculus, db, hyps, trust_db)
        _check_goal(lhs, rhs, ctx.calc)
        for _, hl, hr in hyps:
            _check_goal(hl, hr, ctx.calc)
    except (KernelError, RewriteError, TermError) as exc:
        return Verdict(False, None, f"bad goal: {exc}")
    goals = [(lhs, rhs)]
    for k, step in enumerate(steps):
        if not goals:
            return Verdict(False, k, "no open goal", len(steps))
        try:
            goals = _step(step, goals, ctx)
        except (KernelError, RewriteError, TermError) as exc:
            return Verdict(False, k, f"{type(exc).__name__}: {exc}", len(steps),
                           tuple(sorted(ctx.uses)))
    for g in goals:
        if not alpha_equal(*g):
            return Verdict(False, len(steps), "goal not closed", len(steps),
                           tuple(sorted(ctx.uses)))
    return Verdict(True, None, "", len(steps), tuple(sorted(ctx.uses)))


def replay_proof(proof: Proof, calculus, db=None) -> Verdict:
    """Replay a search result.  Without ``db``, derived-rule lemmas are trusted."""
    if db is None:
        rules_db = _RuleTrustDB(calculus)
        return replay(proof.lhs, proof.rhs, proof.steps, calculus, rules_db, trust_db=True)
    return replay(proof.lhs, proof.rhs, proof.steps, calculus, db)


class _RuleTrustDB(LemmaDB):
    """Placeholder entries for the lemmas behind derived rules."""

    def __init__(self, calculus):
        super().__init__()
        calc = calculus_of(calculus)
        for r in calc.all_rules():
            for dep in r.requires:
                self.add(Lemma(dep, "base-em", Const("1"), Const("1"), verified=True))


def check_script(script: Script, db: LemmaDB) -> Verdict:
    """Replay a script against ``db``; declared deps must cover what it uses."""
    v = replay(script.lhs, script.rhs, script.steps, script.calculus, db, script.hyps)
    if v.ok:
        missing = set(v.uses) - set(script.deps)
        if missing:
            return Verdict(False, None, f"undeclared dependencies {sorted(missing)}",
                           v.steps, v.uses)
    return v


@dataclass
class ReportEntry:
    name: str
    calculus: str
    verdict: str                   # "ok" | "postulate" | "failed" | "missing-script" | "blocked"
    steps: int = 0
    reason: str = ""
    oracle: Optional[bool] = None
    uses: tuple = ()
    relies: tuple = ()             # postulates reached through the dependencies

    @property
    def accepted(self) -> bool:
        return self.verdict in ("ok", "postulate") and self.oracle is not False

    def as_dict(self):
        return {"name": self.name, "calculus": self.calculus, "verdict": self.verdict,
                "steps": self.steps, "reason": self.reason, "oracle": self.oracle,
                "uses": list(self.uses), "relies_on_postulates": list(self.relies)}


def topo_order(scripts):
    """Scripts ordered so dependencies come first; raises on cycles."""
    by_name = {s.name: s for s in scripts}
    order, state = [], {}

    def visit(name, trail):
        if state.get(name) == "done":
            return
        if state.get(name) == "active":
            raise CyclicDependency(" -> ".join(trail + [name]))
        state[name] = "active"
        for d in by_name[name].deps:
            if d in by_name:
                visit(d, trail + [name])
        state[name] = "done"
        order.append(by_name[name])

    for s in sorted(by_name):
        visit(s, [])
    return order


def _check_postulate(s: Script, lem: Lemma, trials: int, seed: int) -> ReportEntry:
    """A postulate carries no steps; it is accepted when the oracle agrees."""
    from .model import oracle_equal
    lem.postulate = True
    if s.steps or s.deps:
        return ReportEntry(s.name, s.calculus, "failed",
                           reason="a postulate has neither steps nor dependencies")
    ok = bool(oracle_equal(s.lhs, s.rhs, trials, seed,
                           hypotheses=[(l, r) for _, l, r in s.hyps]))
    lem.verified = ok
    return ReportEntry(s.name, s.calculus, "postulate" if ok else "failed", 0,
                       s.postulate if ok else "the model oracle refutes the postulate",
                       oracle=ok)


def check_all(scripts, db: Optional[LemmaDB] = None, oracle: bool = True,
              trials: int = 100, seed: int = 0):
    """Replay every script in dependency order; returns report entries.

    ``db`` lists the expected lemmas (statements to be covered); lemmas
    without a script are reported as ``missing-script``.
    """
    from .model import oracle_equal
    scripts = list(scripts)
    work = LemmaDB()
    entries = {}
    try:
        ordered = topo_order(scripts)
    except CyclicDependency as exc:
        return [ReportEntry(s.name, s.calculus, "failed", reason=f"cyclic: {exc}")
                for s in scripts]
    for s in ordered:
        lem = Lemma(s.name, s.calculus, s.lhs, s.rhs, s.hyps)
        if db is not None and s.name in db:
            want = db[s.name]
            if not (alpha_equal(want.lhs, s.lhs) and alpha_equal(want.rhs, s.rhs)):
                entries[s.name] = ReportEntry(s.name, s.calculus, "failed",
                                              reason="script goal differs from the lemma statement")
                work.add(lem)
                continue
        missing = [d for d in s.deps if d not in work or not work[d].verified]
        if missing:
            work.add(lem)
            entries[s.name] = ReportEntry(s.name, s.calculus, "blocked",
                                          reason=f"unverified dependencies {missing}")
            continue
        if s.postulate:
            entries[s.name] = _check_postulate(s, lem, trials, seed)
            work.add(lem)
            continue
        v = check_script(s, work)
        lem.verified = v.ok
        work.add(lem)
        relies = sorted({r for u in v.uses if u in entries
                         for r in entries[u].relies + ((u,) if work[u].postulate else ())})
        entry = ReportEntry(s.name, s.calculus, "ok" if v.ok else "failed", v.steps,
                            "" if v.ok else (f"step {v.step}: " if v.step is not None else "") + v.reason,
                            uses=v.uses, relies=tuple(relies))
        if oracle:
            entry.oracle = bool(oracle_equal(s.lhs, s.rhs, trials, seed,
                                             hypotheses=[(l, r) for _, l, r in s.hyps]))
        entries[s.name] = entry
    out = [entries[s.name] for s in ordered]
    if db is not None:
        have = {s.name for s in scripts}
        for lem in db:
            if lem.name not in have:
                out.append(ReportEntry(lem.name, lem.calculus, "missing-script",
                                       reason="no script covers this lemma"))
    return out
