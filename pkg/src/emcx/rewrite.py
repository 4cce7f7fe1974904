"""Rewrite rules, calculi, normalization and bounded equality search."""

from __future__ import annotations

import heapq
import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .steps import Beta, Eta, Proof, Refl, Rewrite, UseLemma, on_side
from .terms import (App, Const, E, Lam, N, NB, Term, TermError, Type, Var,
                    alpha_equal, alpha_key, arrows, fresh_name, free_vars,
                    infer_type, is_subtype, order_key, replace_at, size,
                    spine, subst_many, subterm)


class RewriteError(Exception):
    pass


class NoMatch(RewriteError):
    pass


class SideConditionFailed(RewriteError):
    pass


class DirectionUnavailable(RewriteError):
    pass


class UnknownCalculus(RewriteError):
    pass


class UnknownRule(RewriteError):
    pass


# --------------------------------------------------------------------------- #
# patterns
# --------------------------------------------------------------------------- #

def is_meta(t: Term) -> bool:
    return isinstance(t, Var) and t.name.startswith("?")


def metas(t: Term) -> frozenset:
    return frozenset(v for v in free_vars(t) if v.startswith("?"))


def schematic(t: Term, names=None) -> Term:
    """Turn free variables (all, or those in ``names``) into metavariables."""
    from .terms import free_var_types
    fvt = free_var_types(t)
    names = fvt if names is None else names
    return subst_many(t, {n: Var("?" + n, fvt[n]) for n in names if n in fvt})


def pattern(text: str, **types: Type) -> Term:
    """Parse ``text`` and make the named free variables metavariables."""
    from .syntax import parse
    t = parse(text)
    return subst_many(t, {n: Var("?" + n, ty) for n, ty in types.items()})


class _State:
    __slots__ = ("side",)

    def __init__(self):
        self.side = False


def match(pat: Term, t: Term, binding: Optional[dict] = None):
    """Match ``pat`` against ``t`` up to alpha.

    Returns ``(binding, side_failed)``; ``binding`` is ``None`` on failure and
    ``side_failed`` reports that a metavariable's type was the only obstacle.
    """
    b = dict(binding or {})
    st = _State()
    ok = _match(pat, t, b, {}, frozenset(), st)
    return (b if ok else None), st.side


def _match(p, t, b, pmap, tbound, st) -> bool:
    if isinstance(p, Var):
        if p.name in pmap:
            return isinstance(t, Var) and t.name == pmap[p.name]
        if p.name.startswith("?"):
            if tbound and free_vars(t) & tbound:
                return False
            if p.name in b:
                return alpha_equal(b[p.name], t)
            if not is_subtype(infer_type(t), p.type):
                st.side = True
                return False
            b[p.name] = t
            return True
        return (isinstance(t, Var) and t.name == p.name and t.type == p.type
                and t.name not in tbound)
    if isinstance(p, Const):
        return isinstance(t, Const) and t.name == p.name
    if isinstance(p, App):
        return (isinstance(t, App) and _match(p.fun, t.fun, b, pmap, tbound, st)
                and _match(p.arg, t.arg, b, pmap, tbound, st))
    if isinstance(p, Lam):
        if not isinstance(t, Lam) or t.vtype != p.vtype:
            return False
        inner = dict(pmap)
        inner[p.var] = t.var
        return _match(p.body, t.body, b, inner, tbound | {t.var}, st)
    return False


def instantiate(pat: Term, binding: dict) -> Term:
    return subst_many(pat, binding)


def _head_sig(t: Term):
    """Cheap index key: (head kind, arity)."""
    head, args = spine(t)
    if isinstance(head, Const):
        return (head.name, len(args))
    if isinstance(head, Lam):
        return ("<lam>", len(args))
    return (None, len(args))


# --------------------------------------------------------------------------- #
# rules
# --------------------------------------------------------------------------- #

class Rule:
    """An oriented rewrite rule.

    ``kind`` is ``axiom`` (stated by the calculus), ``definition`` (unfolds a
    named constant) or ``derived`` (sound given the lemmas in ``requires``).
    """
    name: str
    kind: str = "axiom"
    bidirectional: bool = False
    can_backward: bool = True
    requires: tuple = ()
    doc: str = ""

    def index_keys(self):
        """Head signatures ``(fwd, bwd)`` the rule can fire on; ``None`` = anywhere."""
        return None

    def fires_on(self, key, direction="fwd") -> bool:
        keys = self.index_keys()
        if keys is None:
            return True
        want = keys[0] if direction == "fwd" else keys[1]
        return want is None or want[0] is None or want == key

    def forward(self, t: Term) -> Optional[Term]:
        raise NotImplementedError

    def backward(self, t: Term) -> Optional[Term]:
        return None

    def diagnose(self, t: Term, direction: str) -> Term:
        """Apply once or raise the reason it does not apply."""
        out = self.forward(t) if direction == "fwd" else self.backward(t)
        if out is None:
            raise NoMatch(f"{self.name} does not match {t!r}")
        return out

    def __repr__(self):
        return f"<rule {self.name}>"


class PatternRule(Rule):
    def __init__(self, name, lhs, rhs, kind="axiom", bidirectional=False,
                 requires=(), doc=""):
        self.name = name
        self.lhs = lhs
        self.rhs = rhs
        self.kind = kind
        self.bidirectional = bidirectional
        self.requires = tuple(requires)
        self.doc = doc
        self.can_backward = metas(lhs) <= metas(rhs)
        self.can_forward = metas(rhs) <= metas(lhs)
        self._keys = (_head_sig(lhs), _head_sig(rhs))

    def index_keys(self):
        return self._keys

    def _rewrite(self, src, dst, t, extra=None):
        b, _ = match(src, t, extra)
        if b is None:
            return None
        if not metas(dst) <= set(b):
            return None
        return instantiate(dst, b)

    def forward(self, t):
        if not self.can_forward:
            return None
        return self._rewrite(self.lhs, self.rhs, t)

    def backward(self, t):
        if not self.can_backward:
            return None
        return self._rewrite(self.rhs, self.lhs, t)

    def apply_with(self, t, direction, extra):
        src, dst = (self.lhs, self.rhs) if direction == "fwd" else (self.rhs, self.lhs)
        b, side = match(src, t, extra)
        if b is None:
            if side:
                raise SideConditionFailed(f"{self.name}: side condition fails on {t!r}")
            raise NoMatch(f"{self.name} does not match {t!r}")
        missing = metas(dst) - set(b)
        if missing:
            raise NoMatch(f"{self.name}: no instance given for {sorted(missing)}")
        return instantiate(dst, b)

    def diagnose(self, t, direction):
        if direction == "bwd" and not self.can_backward:
            raise DirectionUnavailable(f"{self.name} cannot be used backward")
        return self.apply_with(t, direction, None)


class BetaRule(Rule):
    name = "beta"
    can_backward = False
    doc = "(\\u:T. A) B = A[u := B]"

    def fires_on(self, key, direction="fwd"):
        return direction == "fwd" and key[0] == "<lam>"

    def forward(self, t):
        if isinstance(t, App) and isinstance(t.fun, Lam):
            arg_t = infer_type(t.arg)
            if not is_subtype(arg_t, t.fun.vtype):
                return None
            return subst_many(t.fun.body, {t.fun.var: t.arg})
        return None

    def diagnose(self, t, direction):
        if direction == "bwd":
            raise DirectionUnavailable("beta cannot be used backward")
        out = self.forward(t)
        if out is None:
            raise NoMatch(f"no beta redex at {t!r}")
        return out


class EtaRule(Rule):
    """``\\e.\\x. A e x = A`` at the edge types of a calculus."""
    name = "eta"

    def __init__(self, edges=(E,)):
        self.edges = tuple(edges)
        self.doc = "\\e:E.\\x:E. (A e x) = A for A : E -> E -> E"

    def forward(self, t):
        if not (isinstance(t, Lam) and isinstance(t.body, Lam)):
            return None
        e, x = t.var, t.body.var
        if e == x or t.vtype != t.body.vtype or t.vtype not in self.edges:
            return None
        body = t.body.body
        if not (isinstance(body, App) and isinstance(body.fun, App)):
            return None
        f, ve, vx = body.fun.fun, body.fun.arg, body.arg
        if not (isinstance(ve, Var) and ve.name == e and isinstance(vx, Var) and vx.name == x):
            return None
        if e in free_vars(f) or x in free_vars(f):
            return None
        edge = t.vtype
        if infer_type(f) != arrows(edge, edge, edge):
            return None
        return f

    def backward(self, t):
        ty = infer_type(t)
        for edge in self.edges:
            if ty == arrows(edge, edge, edge):
                fv = free_vars(t)
                e = fresh_name("e", fv)
                x = fresh_name("x", fv | {e})
                return Lam(e, edge, Lam(x, edge, t(Var(e, edge), Var(x, edge))))
        return None


class NGroupRule(Rule):
    """Canonical form of products and inverses in the commutative group N.

    Factors are collected with integer exponents, sorted by the total term
    order, and rebuilt as a left-nested product; a factor 0 absorbs.
    """
    name = "ngroup"
    kind = "derived"
    can_backward = False
    requires = ("grp_inv_inv", "grp_inv_one", "grp_mul_inv",
                "grp_assoc", "grp_unit", "grp_inv_mul")
    doc = "word normalisation in the commutative group of node terms"

    def fires_on(self, key, direction="fwd"):
        return direction == "fwd" and key in (("dot", 2), ("star", 1))

    def forward(self, t):
        head, args = spine(t)
        if not isinstance(head, Const):
            return None
        if not ((head.name == "dot" and len(args) == 2) or
                (head.name == "star" and len(args) == 1)):
            return None
        if infer_type(t) != N:
            return None
        out = canonical_product(t)
        if alpha_equal(out, t):
            return None
        return out

    def diagnose(self, t, direction):
        if direction == "bwd":
            raise DirectionUnavailable("ngroup cannot be used backward")
        out = self.forward(t)
        if out is None:
            raise NoMatch(f"{t!r} is already a canonical product")
        return out


def canonical_product(t: Term) -> Term:
    exps: dict = defaultdict(int)
    reps: dict = {}
    zero = [False]

    def walk(u, sign):
        head, args = spine(u)
        if isinstance(head, Const):
            if head.name == "dot" and len(args) == 2:
                walk(args[0], sign)
                walk(args[1], sign)
                return
            if head.name == "star" and len(args) == 1:
                walk(args[0], -sign)
                return
            if head.name == "1" and not args:
                return
            if head.name == "0" and not args:
                zero[0] = True
                return
        k = alpha_key(u)
        exps[k] += sign
        reps.setdefault(k, u)

    walk(t, 1)
    if zero[0]:
        return Const("0")
    atoms = sorted((k for k in exps if exps[k]), key=lambda k: order_key(reps[k]))
    factors = []
    for k in atoms:
        f = reps[k] if exps[k] > 0 else Const("star")(reps[k])
        factors.extend([f] * abs(exps[k]))
    if not factors:
        return Const("1")
    out = factors[0]
    for f in factors[1:]:
        out = Const("dot")(out, f)
    return out


class LemmaRule(PatternRule):
    """A proven equation used as a rule during search."""

    def __init__(self, name, lhs, rhs):
        super().__init__(name, schematic(lhs), schematic(rhs), kind="lemma",
                         bidirectional=True)


# --------------------------------------------------------------------------- #
# calculi
# --------------------------------------------------------------------------- #

LEVELS = {"base-em": 0, "emergent": 1, "em-convex": 2, "n-convex": 3}


@dataclass
class Calculus:
    name: str
    rules: list                    # oriented rules used by normalize, in priority order
    axioms: list                   # bidirectional, search-only
    constants: frozenset
    eta_edges: tuple = (E,)
    ext_on_nbar: bool = False
    _by_name: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for r in self.rules + self.axioms:
            self._by_name[r.name] = r

    @property
    def level(self) -> int:
        return LEVELS[self.name]

    def rule(self, name: str) -> Rule:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownRule(f"{name} is not a rule of {self.name}") from None

    def has_rule(self, name: str) -> bool:
        return name in self._by_name

    def all_rules(self):
        return self.rules + self.axioms

    def includes(self, other: str) -> bool:
        return LEVELS[other] <= self.level


def _P(name, lhs, rhs, types, **kw):
    return PatternRule(name, pattern(lhs, **types), pattern(rhs, **types), **kw)


def _base_rules():
    from .combinators import ASUM_BODY, ADIF_BODY, AINV_BODY
    return [
        BetaRule(),
        EtaRule((E,)),
        _P("id", "circ 1", "\\e:E. \\x:E. x", {}, doc="circ 1 = \\e.\\x. x"),
        _P("id-bullet", "bullet 1", "\\e:E. \\x:E. x", {}, doc="bullet 1 = \\e.\\x. x"),
        _P("in-inv", "bullet (star A)", "circ A", {"A": N},
           doc="bullet (star A) = circ A"),
        _P("in", "bullet A", "circ (star A)", {"A": N}, doc="circ (star A) = bullet A"),
        _P("R1", "circ A B B", "B", {"A": N, "B": E}, doc="circ A B B = B"),
        _P("R2", "circ A B (bullet A B C)", "C", {"A": N, "B": E, "C": E},
           doc="circ A B (bullet A B C) = C"),
        _P("act", "circ A X (circ B X Z)", "circ (dot A B) X Z",
           {"A": N, "B": N, "X": E, "Z": E},
           doc="circ (dot A B) = \\e.\\x. circ A e (circ B e x), used folded"),
        NGroupRule(),
        PatternRule("Sig-def", pattern("Sig A", A=N),
                    subst_many(ASUM_BODY, {"a": Var("?A", N)}), kind="definition"),
        PatternRule("Del-def", pattern("Del A", A=N),
                    subst_many(ADIF_BODY, {"a": Var("?A", N)}), kind="definition"),
        PatternRule("iot-def", pattern("iot A", A=N),
                    subst_many(AINV_BODY, {"a": Var("?A", N)}), kind="definition"),
    ]


def _emergent_rules():
    return [
        _P("circ0", "circ 0", "\\e:E. \\x:E. e", {}, doc="circ 0 = bar0"),
        _P("mul0r", "dot A 0", "0", {"A": NB}, doc="dot A 0 = 0"),
        _P("mul0l", "dot 0 A", "0", {"A": NB}, doc="dot 0 A = 0"),
        _P("Sig0", "Sig 0", "SigB", {}, doc="Sig 0 = SigB"),
        _P("Del0", "Del 0", "DelB", {}, doc="Del 0 = DelB"),
        _P("iot0", "iot 0", "iotB", {}, doc="iot 0 = iotB"),
    ]


def _convex_rules():
    from .combinators import NSUM_BODY, NDIF_BODY, NINV_BODY
    return [
        _P("icvx-def", "icvx C A B", "cvx (star C) A B", {"C": N, "A": NB, "B": NB},
           kind="definition",
           doc="icvx C A B = cvx (star C) A B"),
        PatternRule("sig-def", pattern("sig A", A=N),
                    subst_many(NSUM_BODY, {"a": Var("?A", N)}), kind="definition"),
        PatternRule("del-def", pattern("del A", A=N),
                    subst_many(NDIF_BODY, {"a": Var("?A", N)}), kind="definition"),
        PatternRule("jj-def", pattern("jj A", A=N),
                    subst_many(NINV_BODY, {"a": Var("?A", N)}), kind="definition"),
        _P("sig0", "sig 0", "sigB", {}, doc="sig 0 = sigB"),
        _P("del0", "del 0", "delB", {}, doc="del 0 = delB"),
        _P("jj0", "jj 0", "jB", {}, doc="jj 0 = jB"),
        _P("cvx0", "cvx 0 A B", "A", {"A": NB, "B": NB}, kind="definition",
           doc="cvx 0 A B = A"),
    ]


def convex_axiom() -> PatternRule:
    from .combinators import diff_b, mul_e
    A, B, C = Var("?A", N), Var("?B", N), Var("?C", N)
    circ = Const("circ")
    lhs = diff_b(mul_e(diff_b(circ(B))(A), circ(C)))(A)
    rhs = circ(Const("cvx")(C, A, B))
    return PatternRule("convex", lhs, rhs, bidirectional=True,
                       doc="A - ((A - circ B) . circ C) = circ (cvx C A B)")


def _nconvex_rules():
    cvx_req = ("cvx_id", "cvx_R1", "cvx_act")
    return [
        EtaRule((E, NB)),
        _P("cvx-id", "cvx 1 A B", "B", {"A": NB, "B": NB}, kind="derived",
           requires=("cvx_id",), doc="cvx 1 A B = B"),
        _P("cvx-R1", "cvx C A A", "A", {"C": N, "A": NB}, kind="derived",
           requires=("cvx_R1",), doc="cvx C A A = A"),
        _P("cvx-act", "cvx C A (cvx D A B)", "cvx (dot C D) A B",
           {"C": N, "D": N, "A": NB, "B": NB}, kind="derived",
           requires=("cvx_act",), doc="cvx (dot C D) used folded"),
    ]


@lru_cache(maxsize=None)
def rules_for(name: str) -> Calculus:
    """The rule set of a calculus; each calculus extends the previous one."""
    if name not in LEVELS:
        raise UnknownCalculus(name)
    comm = _P("C", "dot A B", "dot B A", {"A": N, "B": N}, bidirectional=True,
              doc="dot A B = dot B A")
    base_consts = {"1", "circ", "bullet", "dot", "star", "Sig", "Del", "iot"}
    rules = _base_rules()
    axioms = [comm]
    consts = set(base_consts)
    edges = (E,)
    if LEVELS[name] >= 1:
        rules = rules[:2] + _emergent_rules() + rules[2:]
        consts |= {"0", "SigB", "DelB", "iotB"}
    if LEVELS[name] >= 2:
        rules = rules + _convex_rules()
        axioms = axioms + [convex_axiom()]
        consts |= {"cvx", "icvx", "sig", "del", "jj", "sigB", "delB", "jB"}
    if LEVELS[name] >= 3:
        extra = _nconvex_rules()
        eta = extra[0]
        rules = [rules[0], eta] + [r for r in rules[2:]] + extra[1:]
        edges = (E, NB)
    return Calculus(name, rules, axioms, frozenset(consts), edges,
                    ext_on_nbar=LEVELS[name] >= 2)


def calculus_of(name_or_calculus) -> Calculus:
    if isinstance(name_or_calculus, Calculus):
        return name_or_calculus
    return rules_for(name_or_calculus)


def constants_of(t: Term) -> set:
    if isinstance(t, Const):
        return {t.name}
    if isinstance(t, App):
        return constants_of(t.fun) | constants_of(t.arg)
    if isinstance(t, Lam):
        return constants_of(t.body)
    return set()


# --------------------------------------------------------------------------- #
# single steps
# --------------------------------------------------------------------------- #

def apply_rule(rule: Rule, t: Term, path=(), direction: str = "fwd",
               allow_backward: bool = False) -> Term:
    """Rewrite the subterm of ``t`` at ``path`` once with ``rule``."""
    sub = subterm(t, tuple(path))
    if direction == "bwd" and not (allow_backward or rule.bidirectional):
        raise DirectionUnavailable(f"{rule.name} is oriented; backward use is "
                                   "reserved to the proof kernel")
    new = rule.diagnose(sub, direction)
    out = replace_at(t, tuple(path), new)
    to, tn = infer_type(t), infer_type(out)
    if not (is_subtype(tn, to) or is_subtype(to, tn)):
        raise TermError(f"{rule.name} changed the type of the term")
    return out


def step_for(rule: Rule, side: str, path: tuple, direction: str = "fwd"):
    if isinstance(rule, BetaRule):
        return Beta(side, path)
    if isinstance(rule, EtaRule):
        return Eta(side, path, direction)
    if isinstance(rule, LemmaRule):
        return UseLemma(rule.name, side, path, direction)
    return Rewrite(rule.name, side, path, direction)


# --------------------------------------------------------------------------- #
# normalization
# --------------------------------------------------------------------------- #

@dataclass
class NormalResult:
    term: Term
    status: str                    # "normal" | "fuel-exhausted"
    trace: list

    def __iter__(self):
        return iter((self.term, self.status))


def _find_redex(t: Term, rules, path=()):
    key = _head_sig(t)
    for r in rules:
        if not r.fires_on(key):
            continue
        try:
            out = r.forward(t)
        except TermError:
            out = None
        if out is not None:
            return path, r, out
    if isinstance(t, App):
        hit = _find_redex(t.fun, rules, path + (0,))
        if hit is None:
            hit = _find_redex(t.arg, rules, path + (1,))
        return hit
    if isinstance(t, Lam):
        return _find_redex(t.body, rules, path + (0,))
    return None


def normalize(t: Term, calculus="base-em", fuel: int = 10000, rules=None,
              side: str = "l") -> NormalResult:
    """Leftmost-outermost rewriting with the oriented rules of ``calculus``.

    Returns the reached term, ``"normal"`` or ``"fuel-exhausted"``, and the
    step trace (targeting ``side``) that replays the run in the kernel.
    """
    calc = calculus_of(calculus)
    rules = list(calc.rules if rules is None else rules)
    trace = []
    for _ in range(fuel):
        hit = _find_redex(t, rules)
        if hit is None:
            return NormalResult(t, "normal", trace)
        path, r, out = hit
        t = replace_at(t, path, out)
        trace.append(step_for(r, side, path))
    if _find_redex(t, rules) is None:
        return NormalResult(t, "normal", trace)
    return NormalResult(t, "fuel-exhausted", trace)


def nf(t: Term, calculus="base-em", fuel: int = 10000) -> Term:
    return normalize(t, calculus, fuel).term


# --------------------------------------------------------------------------- #
# equality search
# --------------------------------------------------------------------------- #

def successors(t: Term, rules, max_size: Optional[int] = None):
    """All single rewrites of ``t``: ``(rule, path, direction, term)``."""
    out = []
    from .terms import positions
    for path in positions(t):
        sub = subterm(t, path)
        key = _head_sig(sub)
        for r in rules:
            for direction in ("fwd", "bwd"):
                if direction == "bwd" and not r.can_backward:
                    continue
                if not r.fires_on(key, direction):
                    continue
                if isinstance(r, EtaRule) and direction == "bwd":
                    continue
                try:
                    new = r.forward(sub) if direction == "fwd" else r.backward(sub)
                except TermError:
                    new = None
                if new is None:
                    continue
                whole = replace_at(t, path, new)
                if max_size is not None and size(whole) > max_size:
                    continue
                out.append((r, path, direction, whole))
    return out


def _canon(t):
    from .syntax import show
    return show(t)


def prove_equal(t1: Term, t2: Term, calculus="base-em", budget: int = 50000,
                lemmas=(), fuel: int = 10000) -> Optional[Proof]:
    """Search for a proof of ``t1 = t2``.

    Both sides are normalized first; failing that, a breadth-first search
    runs from both ends over forward and backward rule uses (plus the given
    ``lemmas``, as ``(name, lhs, rhs)``), counting expanded nodes against
    ``budget``.  ``None`` means nothing was found, not that the terms differ.
    """
    calc = calculus_of(calculus)
    if alpha_equal(t1, t2):
        return Proof(t1, t2, [])
    r1 = normalize(t1, calc, fuel, side="l")
    r2 = normalize(t2, calc, fuel, side="r")
    if alpha_equal(r1.term, r2.term):
        return Proof(t1, t2, r1.trace + r2.trace + [Refl()])
    rules = calc.all_rules() + [LemmaRule(n, l, r) for n, l, r in lemmas]
    limit = 2 * max(size(r1.term), size(r2.term)) + 24
    # node: (term, parent index, steps from parent, side)
    nodes = [(r1.term, None, r1.trace, "l"), (r2.term, None, r2.trace, "r")]
    seen = {alpha_key(r1.term): 0, alpha_key(r2.term): 1}
    queue = [0, 1]
    qi = 0
    expanded = 0
    while qi < len(queue) and expanded < budget:
        idx = queue[qi]
        qi += 1
        term, _, _, side = nodes[idx]
        expanded += 1
        succ = successors(term, rules, limit)
        succ.sort(key=lambda s: (_canon(s[3]), s[0].name, s[1], s[2]))
        for r, path, direction, new in succ:
            steps = [step_for(r, side, path, direction)]
            cands = [(new, steps)]
            nr = normalize(new, calc, fuel, side=side)
            if nr.trace:
                cands.append((nr.term, nr.trace))
            parent = idx
            for cand, csteps in cands:
                k = alpha_key(cand)
                if k in seen:
                    other = seen[k]
                    if nodes[other][3] != side:
                        nodes.append((cand, parent, csteps, side))
                        return _assemble(t1, t2, nodes, len(nodes) - 1, other)
                    parent = other
                    continue
                nodes.append((cand, parent, csteps, side))
                seen[k] = len(nodes) - 1
                queue.append(len(nodes) - 1)
                parent = len(nodes) - 1
    return None


def _chain(nodes, idx):
    steps = []
    while idx is not None:
        _, parent, s, _ = nodes[idx]
        steps[:0] = s
        idx = parent
    return steps


def _assemble(t1, t2, nodes, a, b):
    if nodes[a][3] == "r":
        a, b = b, a
    return Proof(t1, t2, _chain(nodes, a) + _chain(nodes, b) + [Refl()])
