"""Finite terms, their extension to the node type with 0, and the (em) step."""

from __future__ import annotations

from dataclasses import dataclass

from .rewrite import canonical_product, normalize
from .terms import (App, Const, E, Lam, N, NB, Term, TermError, Var,
                    alpha_equal, extend_type, infer_type, spine)


class NotFinite(TermError):
    pass


class BadProof(TermError):
    pass


E_HEADS = ("circ", "Sig", "Del", "iot")
NB_HEADS = ("cvx", "sig", "del", "jj")


@dataclass(frozen=True)
class ExtensionResult:
    extended: Term
    provenance: Term


def is_finite(t: Term, convex: bool = False) -> bool:
    """Membership in the finite grammar over edges.

    Unfolded approximate operations count, through :func:`fold`.

    With ``convex`` the node combination constant ``cvx A`` (``A : N``) is
    allowed as well, as in the em-convex calculus.
    """
    heads = E_HEADS + (("cvx",) if convex else ())
    return _finite(t, heads, (E, N)) or _finite(fold(t), heads, (E, N))


def _finite_form(t: Term, convex: bool) -> Term:
    """``t`` itself, or its folded form when only that one is in the grammar.

    The approximate operations may occur unfolded (``circ (star a) ...``);
    extension goes through the folded constants so that no ``star`` is
    applied to an extended node.
    """
    heads = E_HEADS + (("cvx",) if convex else ())
    return t if _finite(t, heads, (E, N)) else fold(t)


def is_finite_c(t: Term) -> bool:
    """Membership in the finite grammar of the node-only (N-convex) calculus."""
    return _finite(t, NB_HEADS, (NB, N))


def _finite(t, heads, base_types) -> bool:
    head, args = spine(t)
    if isinstance(head, Var):
        return not args and head.type in base_types
    if isinstance(head, Lam):
        return (head.vtype in base_types and _finite(head.body, heads, base_types)
                and all(_finite(a, heads, base_types) for a in args))
    if isinstance(head, Const):
        name = head.name
        if name == "1":
            return not args
        if name == "dot":
            return (len(args) == 2 and all(infer_type(a) == N for a in args)
                    and all(_finite(a, heads, base_types) for a in args))
        if name in heads:
            return (len(args) >= 1 and infer_type(args[0]) == N
                    and all(_finite(a, heads, base_types) for a in args))
    return False


def _retype(t: Term) -> Term:
    if isinstance(t, Var):
        return Var(t.name, extend_type(t.type))
    if isinstance(t, Const):
        return t
    if isinstance(t, App):
        return App(_retype(t.fun), _retype(t.arg))
    return Lam(t.var, extend_type(t.vtype), _retype(t.body))


def ext(t: Term, convex: bool = False) -> ExtensionResult:
    """Extension of a finite term: every node variable becomes an ``Nb`` one."""
    if not is_finite(t, convex):
        raise NotFinite(f"not a finite term: {t!r}")
    return ExtensionResult(_retype(_finite_form(t, convex)), t)


def ext_c(t: Term) -> ExtensionResult:
    if not is_finite_c(t):
        raise NotFinite(f"not a finite node-only term: {t!r}")
    return ExtensionResult(_retype(t), t)


def fold(t: Term) -> Term:
    """Fold unfolded approximate operations back into ``Sig``, ``Del``, ``iot``.

    ``circ P U V`` is recognised when ``P`` is the inverse of the coefficient
    ``A`` of the inner dilations, up to group normalisation.
    """
    if isinstance(t, App):
        t = App(fold(t.fun), fold(t.arg))
    elif isinstance(t, Lam):
        t = Lam(t.var, t.vtype, fold(t.body))
    head, args = spine(t)
    if not (isinstance(head, Const) and head.name == "circ" and len(args) == 3):
        return t
    p, u, v = args

    def inverse_of(a):
        return canonical_product(Const("dot")(p, a)) == Const("1")

    def dil_parts(w):
        h, xs = spine(w)
        if isinstance(h, Const) and h.name == "circ" and len(xs) == 3:
            return xs
        return None

    pu = dil_parts(u)
    if pu is not None:
        a, e, x = pu
        if inverse_of(a) and infer_type(a) == N:
            if alpha_equal(v, e):
                return Const("iot")(a, e, x)
            pv = dil_parts(v)
            if pv is not None and alpha_equal(pv[0], a) and alpha_equal(pv[1], e):
                return Const("Del")(a, e, x, pv[2])
    pv = dil_parts(v)
    if pv is not None:
        a, w, y = pv
        pw = dil_parts(w)
        if (pw is not None and alpha_equal(pw[0], a) and alpha_equal(pw[1], u)
                and inverse_of(a) and infer_type(a) == N):
            return Const("Sig")(a, u, pw[2], y)
    return t


def to_finite(t: Term, calculus="base-em", convex: bool = False) -> Term:
    """A finite representative of ``t``: ``t`` itself, or its folded normal form."""
    if is_finite(t, convex):
        return t
    cand = fold(normalize(t, calculus).term)
    if is_finite(cand, convex):
        return cand
    raise NotFinite(f"no finite form found for {t!r}")


def em_step(lhs: Term, rhs: Term, proof=None, calculus="base-em",
            variant: str = "em"):
    """From a proof of finite ``lhs = rhs`` obtain ``Ext[lhs] = Ext[rhs]``.

    ``proof`` (a :class:`~emcx.steps.Proof`) is replayed by the kernel first;
    without it the caller vouches for the equation.  A side outside the
    finite grammar is replaced by a finite representative when one is found.
    """
    if proof is not None:
        from .kernel import replay_proof
        verdict = replay_proof(proof, calculus)
        if not verdict.ok:
            raise BadProof(verdict.reason)
        if not (alpha_equal(proof.lhs, lhs) and alpha_equal(proof.rhs, rhs)):
            raise BadProof("the proof is about a different equation")
    if variant == "emc":
        return ext_c(lhs).extended, ext_c(rhs).extended
    convex = variant == "em" and _has_cvx(lhs, rhs)
    lhs, rhs = (to_finite(t, calculus, convex) for t in (lhs, rhs))
    return ext(lhs, convex).extended, ext(rhs, convex).extended


def _has_cvx(*ts) -> bool:
    from .rewrite import constants_of
    return any("cvx" in constants_of(t) for t in ts)
