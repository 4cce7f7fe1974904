"""Exact rational model: affine dilations on a d-dimensional rational space.

Edges denote points (tuples of ``Fraction``), nodes denote scalars.  The
dilation of coefficient ``a`` based at ``e`` is ``x -> e + a (x - e)``; the
coefficient 0 is the constant map to ``e``, which is how the limit constants
of the emergent calculus get their meaning.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .terms import (App, Arrow, Atom, Const, E, Lam, N, NB, Term, TermError,
                    Type, UnboundVariable, Var, free_var_types, infer_type)


class ModelError(TermError):
    pass


class DivisionByZero(ModelError):
    pass


# --------------------------------------------------------------------------- #
# point arithmetic
# --------------------------------------------------------------------------- #

def _add(p, q):
    return tuple(u + v for u, v in zip(p, q))


def _sub(p, q):
    return tuple(u - v for u, v in zip(p, q))


def _scale(s, p):
    return tuple(s * u for u in p)


def _lin(*pairs):
    """``sum(c * p)`` over ``(c, p)`` pairs."""
    out = None
    for c, p in pairs:
        term = _scale(c, p)
        out = term if out is None else _add(out, term)
    return out


def _inv(a):
    if a == 0:
        raise DivisionByZero("inverse of 0")
    return 1 / Fraction(a)


def dil(a, e, x):
    """``e + a (x - e)`` on points or on scalars."""
    if isinstance(e, tuple):
        return _add(e, _scale(a, _sub(x, e)))
    return e + a * (x - e)


def _fn(n, f):
    """Curry an ``n``-ary Python function."""
    def take(got):
        if len(got) == n:
            return f(*got)
        return lambda v: take(got + (v,))
    return take(())


# the limit constants, as closed forms (checked against the a -> 0 extrapolation
# of the parameterised combinators in the test-suite and by ``limit_check``)
def _sigB(e, x, y):
    return _add(_sub(x, e), y) if isinstance(e, tuple) else x + y - e


def _delB(e, x, y):
    return _add(_sub(e, x), y) if isinstance(e, tuple) else e - x + y


def _iotB(e, x):
    return _sub(_scale(2, e), x) if isinstance(e, tuple) else 2 * e - x


def _Sig(a, e, x, y):
    return dil(_inv(a), e, dil(a, dil(a, e, x), y))


def _Del(a, e, x, y):
    return dil(_inv(a), dil(a, e, x), dil(a, e, y))


def _iot(a, e, x):
    return dil(_inv(a), dil(a, e, x), e)


def _checked_Sig(a, e, x, y):
    return _sigB(e, x, y) if a == 0 else _Sig(a, e, x, y)


def _checked_Del(a, e, x, y):
    return _delB(e, x, y) if a == 0 else _Del(a, e, x, y)


def _checked_iot(a, e, x):
    return _iotB(e, x) if a == 0 else _iot(a, e, x)


def _cvx(c, a, b):
    return a + c * (b - a)


CONSTANT_VALUES: dict = {
    "1": Fraction(1),
    "0": Fraction(0),
    "circ": _fn(3, lambda a, e, x: dil(a, e, x)),
    "bullet": _fn(3, lambda a, e, x: dil(_inv(a), e, x)),
    "dot": _fn(2, lambda a, b: a * b),
    "star": lambda a: _inv(a),
    "Sig": _fn(4, _checked_Sig),
    "Del": _fn(4, _checked_Del),
    "iot": _fn(3, _checked_iot),
    "SigB": _fn(3, _sigB),
    "DelB": _fn(3, _delB),
    "iotB": _fn(2, _iotB),
    "cvx": _fn(3, _cvx),
    "icvx": _fn(3, lambda c, a, b: _cvx(_inv(c), a, b)),
    "sig": _fn(4, lambda a, b, c, d: _sigB(b, c, d) if a == 0 else
               _cvx(_inv(a), b, _cvx(a, _cvx(a, b, c), d))),
    "del": _fn(4, lambda a, b, c, d: _delB(b, c, d) if a == 0 else
               _cvx(_inv(a), _cvx(a, b, c), _cvx(a, b, d))),
    "jj": _fn(3, lambda a, b, c: _iotB(b, c) if a == 0 else
              _cvx(_inv(a), _cvx(a, b, c), b)),
    "sigB": _fn(3, _sigB),
    "delB": _fn(3, _delB),
    "jB": _fn(2, _iotB),
}


def limit_check(f: Callable, args, a1=Fraction(1, 2), a2=Fraction(1, 3)):
    """Extrapolate ``a -> f(a, *args)`` to ``a = 0`` from two points.

    Valid when the map is affine in ``a``, which holds for the approximate
    operations in this model.
    """
    v1, v2 = f(a1, *args), f(a2, *args)
    # v(0) = v1 - a1 (v2 - v1) / (a2 - a1)
    t = a1 / (a2 - a1)
    if isinstance(v1, tuple):
        return _sub(v1, _scale(t, _sub(v2, v1)))
    return v1 - t * (v2 - v1)


# --------------------------------------------------------------------------- #
# evaluation
# --------------------------------------------------------------------------- #

@dataclass
class ModelEnv:
    values: dict = field(default_factory=dict)
    seed: int = 0
    trials: int = 100
    dim: int = 1


def evaluate(t: Term, env):
    """Denotation of ``t`` with free variables looked up in ``env``."""
    values = env.values if isinstance(env, ModelEnv) else dict(env)
    try:
        return _eval(t, values)
    except ZeroDivisionError as exc:
        raise DivisionByZero(str(exc)) from None


def _eval(t, env):
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
    if isinstance(t, Const):
        return CONSTANT_VALUES[t.name]
    if isinstance(t, App):
        f = _eval(t.fun, env)
        return f(_eval(t.arg, env))
    if isinstance(t, Lam):
        def fn(v, _t=t, _env=env):
            inner = dict(_env)
            inner[_t.var] = v
            return _eval(_t.body, inner)
        return fn
    raise ModelError(f"cannot evaluate {t!r}")


# keep the public name short, as used by the command line
eval_term = evaluate


def from_literal(value, ty: Type, dim: int = 1):
    """Model value for a CLI literal at type ``ty``."""
    q = Fraction(value)
    if ty == E:
        return (q,) * dim if dim > 1 else (q,)
    if ty == N and q == 0:
        raise ModelError("a node variable cannot be 0")
    return q


def show_value(v) -> str:
    if isinstance(v, tuple):
        if len(v) == 1:
            return str(v[0])
        return "(" + ", ".join(str(u) for u in v) + ")"
    if isinstance(v, Fraction):
        return str(v)
    return "<function>"


# --------------------------------------------------------------------------- #
# random environments
# --------------------------------------------------------------------------- #

RANGE = 20


def sample_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    """Numerator and denominator uniform in ``[-20, 20]`` (denominator != 0)."""
    while True:
        num = rng.randint(-RANGE, RANGE)
        den = rng.randint(-RANGE, RANGE)
        if den == 0 or (nonzero and num == 0):
            continue
        return Fraction(num, den)


def sample_point(rng, dim):
    return tuple(sample_rational(rng) for _ in range(dim))


def sample_value(ty: Type, rng: random.Random, dim: int = 1):
    if ty == E:
        return sample_point(rng, dim)
    if ty == N:
        return sample_rational(rng, nonzero=True)
    if ty == NB:
        return sample_rational(rng)
    if ty == Arrow(E, Arrow(E, E)) and rng.random() < 0.5:
        # half of the binary edge maps fix the diagonal, so that hypotheses
        # such as f . bar0 = bar0 get satisfied by some trials
        c = sample_rational(rng)
        return _fn(2, lambda e, x: dil(c, e, x))
    return _random_function(ty, rng, dim)


def _random_function(ty: Type, rng, dim):
    """A random affine map, curried along ``ty``."""
    args = []
    while isinstance(ty, Arrow):
        args.append(ty.dom)
        ty = ty.cod
    result = ty
    coefs = [sample_rational(rng) for _ in args]
    dirs = [sample_point(rng, dim) for _ in args]
    const = sample_value(result, rng, dim) if isinstance(result, Atom) else None

    def finish(vals):
        if result == E:
            acc = const
            for c, d, argt, v in zip(coefs, dirs, args, vals):
                if argt == E:
                    acc = _add(acc, _scale(c, v))
                elif isinstance(v, Fraction):
                    acc = _add(acc, _scale(c * v, d))
            return acc
        acc = const
        for c, d, argt, v in zip(coefs, dirs, args, vals):
            if argt == E:
                acc += c * sum(u * w for u, w in zip(d, v))
            elif isinstance(v, Fraction):
                acc += c * v
        if result == N and acc == 0:
            acc = Fraction(1)
        return acc

    def build(vals):
        if len(vals) == len(args):
            return finish(vals)
        return lambda v: build(vals + [v])
    return build([])


def _arg_types(ty: Type):
    out = []
    while isinstance(ty, Arrow):
        out.append(ty.dom)
        ty = ty.cod
    return out


def _apply_all(v, vals):
    for w in vals:
        v = v(w)
    return v


@dataclass
class OracleResult:
    equal: bool
    trials: int
    skipped: int = 0
    counterexample: Optional[dict] = None
    values: Optional[tuple] = None

    def __bool__(self):
        return self.equal


def _holds(l: Term, r: Term, env, rng, dim, points: int = 3) -> bool:
    """A hypothesis holds in ``env``; functions are compared at a few points."""
    lv, rv = evaluate(l, env), evaluate(r, env)
    argts = _arg_types(infer_type(l))
    if not argts:
        return lv == rv
    for _ in range(points):
        extra = [sample_value(a, rng, dim) for a in argts]
        if _apply_all(lv, extra) != _apply_all(rv, extra):
            return False
    return True


def oracle_equal(t1: Term, t2: Term, trials: int = 100, seed: int = 0,
                 dim: int = 1, hypotheses=()) -> OracleResult:
    """Compare denotations of ``t1`` and ``t2`` on random environments.

    Functional values are compared on random arguments.  Trials where only
    one side is defined count as failures; trials where neither is, or where
    a hypothesis pair ``(l, r)`` fails, are skipped.
    """
    fvt = dict(free_var_types(t1))
    for name, ty in free_var_types(t2).items():
        fvt.setdefault(name, ty)
    for l, r in hypotheses:
        for src in (l, r):
            for name, ty in free_var_types(src).items():
                fvt.setdefault(name, ty)
    ty = infer_type(t1)
    argts = _arg_types(ty)
    skipped = 0
    for k in range(trials):
        rng = random.Random(f"{seed}:{k}")
        env = {name: sample_value(fvt[name], rng, dim) for name in sorted(fvt)}
        extra = [sample_value(a, rng, dim) for a in argts]
        try:
            if not all(_holds(l, r, env, rng, dim) for l, r in hypotheses):
                skipped += 1
                continue
        except DivisionByZero:
            skipped += 1
            continue
        outs = []
        for t in (t1, t2):
            try:
                outs.append(_apply_all(evaluate(t, env), extra))
            except DivisionByZero:
                outs.append(DivisionByZero)
        if outs[0] is DivisionByZero and outs[1] is DivisionByZero:
            skipped += 1
            continue
        if outs[0] != outs[1]:
            shown = {n: show_value(v) for n, v in env.items()}
            shown.update({f"#{i}": show_value(v) for i, v in enumerate(extra)})
            return OracleResult(False, k + 1, skipped, shown,
                                tuple(show_value(o) if o is not DivisionByZero
                                      else "undefined" for o in outs))
    return OracleResult(True, trials, skipped)
