import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from emcx import combinators as C
from emcx.model import (ModelEnv, _Del, _Sig, _iot, evaluate, limit_check,
                        oracle_equal, sample_rational)
from emcx.syntax import parse
from emcx.terms import UnboundVariable

q = Fraction


def test_dilation_example():
    assert evaluate(parse("circ a e x"), {"a": q(2), "e": (q(1),), "x": (q(3),)}) == (q(5),)


def test_bar1_example():
    assert evaluate(parse("@bar1 e x"), ModelEnv({"e": (q(7),), "x": (q(9),)})) == (q(9),)


def test_convex_combination_example():
    assert evaluate(parse("cvx c (x:Nb) (y:Nb)"), {"c": q(1, 2), "x": q(0), "y": q(1)}) == q(1, 2)


def test_unbound():
    with pytest.raises(UnboundVariable):
        evaluate(parse("circ a e x"), {"a": q(2)})


def test_inverse_of_zero_is_an_error():
    from emcx.model import DivisionByZero
    with pytest.raises(DivisionByZero):
        evaluate(parse("star (x:N)"), {"x": q(0)})


def test_oracle_examples():
    assert not oracle_equal(C.build("bar0"), C.build("bar1"), 1, 0)
    t = parse("circ a e (Sig a e x y)")
    assert oracle_equal(t, t, 1, 0)


def test_oracle_approximate_associativity():
    from emcx.corpus import statements
    lem = statements()["asum_assoc"]
    for seed in (0, 1, 2):
        assert oracle_equal(lem.lhs, lem.rhs, 100, seed)


def test_oracle_is_deterministic():
    a = oracle_equal(parse("circ a e x"), parse("circ b e x"), 100, 7)
    b = oracle_equal(parse("circ a e x"), parse("circ b e x"), 100, 7)
    assert a.counterexample == b.counterexample and a.trials == b.trials


def test_sampling_ranges():
    rng = random.Random(0)
    for _ in range(500):
        v = sample_rational(rng, nonzero=True)
        assert v != 0 and abs(v.numerator) <= 20 and v.denominator <= 20


fracs = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 20))
pts = st.tuples(fracs)
SIG, DEL, IOT = parse("SigB e x y"), parse("DelB e x y"), parse("iotB e x")


@given(pts, pts, pts)
def test_limit_constants_by_extrapolation(e, x, y):
    # the approximate operations are affine in the coefficient; the closed
    # forms of the barred constants are their values at coefficient 0
    assert limit_check(_Sig, (e, x, y)) == (x[0] + y[0] - e[0],)
    assert limit_check(_Del, (e, x, y)) == (e[0] - x[0] + y[0],)
    assert limit_check(_iot, (e, x)) == (2 * e[0] - x[0],)
    env = {"e": e, "x": x, "y": y}
    assert evaluate(SIG, env) == limit_check(_Sig, (e, x, y))
    assert evaluate(DEL, env) == limit_check(_Del, (e, x, y))
    assert evaluate(IOT, env) == limit_check(_iot, (e, x))


SIG_NODES = parse("sig a (w:Nb) (u:Nb) (v:Nb)")
J_NODES = parse("jj a (w:Nb) (u:Nb)")


@given(fracs, fracs)
def test_node_limit_constants(u, v):
    env = {"u": u, "v": v}
    assert evaluate(parse("sigB 0 (u:Nb) (v:Nb)"), env) == u + v
    assert evaluate(parse("jB 0 (u:Nb)"), env) == -u
    assert evaluate(parse("delB 0 (u:Nb) (v:Nb)"), env) == v - u
    # the node operations at coefficient a, extrapolated to a = 0
    f = lambda a, x, y: evaluate(SIG_NODES, {"a": a, "w": q(0), "u": x, "v": y})
    assert limit_check(f, (u, v)) == u + v
    g = lambda a, x: evaluate(J_NODES, {"a": a, "w": q(0), "u": x})
    assert limit_check(g, (u,)) == -u


def test_edge_map_with_diagonal_hypothesis_is_satisfiable():
    from emcx.corpus import statements
    lem = statements()["bin_diff"]
    r = oracle_equal(lem.lhs, lem.rhs, 100, 0, hypotheses=[(l, rr) for _, l, rr in lem.hyps])
    assert r and r.skipped < 100


def test_higher_dimension():
    from emcx.corpus import statements
    lem = statements()["sigb_assoc"]
    assert oracle_equal(lem.lhs, lem.rhs, 30, 0, dim=3)
    assert not oracle_equal(C.build("bar0"), C.build("bar1"), 5, 0, dim=2)
