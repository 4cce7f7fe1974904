import pytest
from hypothesis import given, strategies as st

from emcx.extension import is_finite
from emcx.gen import random_term
from emcx.syntax import ParseError, parse, parse_type, show, show_unicode
from emcx.terms import (App, ApplicationMismatch, Arrow, Const, E, EEE, Lam, N,
                        NB, NotAFunction, TypeMismatch, UnboundVariable, Var,
                        alpha_equal, free_vars, infer_type, is_subtype,
                        substitute)
from emcx import combinators as C


def test_identity_abstraction_type():
    assert infer_type(parse("\\e:E. \\x:E. x")) == EEE


def test_partial_dilation_type():
    assert infer_type(parse("circ 1")) == EEE


def test_edge_map_where_node_expected():
    with pytest.raises(ApplicationMismatch):
        infer_type(parse("(\\a:N. circ a) (\\e:E. e)"))


def test_unbound_in_context():
    with pytest.raises(UnboundVariable):
        infer_type(Var("x", E), context=[])


def test_context_binds_variable():
    assert infer_type(Var("z", E), context=[("z", E)]) == E


def test_not_a_function():
    with pytest.raises(NotAFunction):
        infer_type(App(Var("x", E), Var("y", E)))


def test_node_accepted_where_extended_node_expected():
    assert is_subtype(N, NB) and not is_subtype(NB, N)
    assert infer_type(parse("circ (dot a 0)")) == EEE
    assert infer_type(parse("dot a b")) == N
    assert infer_type(parse("dot a 0")) == NB


def test_substitute_no_capture():
    t = parse("\\x:E. circ a e x")
    out = substitute(t, "a", N, Const("1"))
    assert alpha_equal(out, parse("\\x:E. circ 1 e x"))


def test_substitute_renames_binder():
    t = parse("\\x:E. y")
    out = substitute(t, "y", E, Var("x", E))
    assert isinstance(out, Lam) and out.var != "x"
    assert out.body == Var("x", E)
    assert free_vars(out) == {"x"}


def test_substitute_variable_head():
    rep = parse("circ a e y")
    assert true_equal(substitute(Var("x", E), "x", E, rep), rep)


def true_equal(a, b):
    return alpha_equal(a, b)


def test_substitute_type_mismatch():
    with pytest.raises(TypeMismatch):
        substitute(parse("circ a e x"), "a", N, Var("e", E))


def test_alpha_equal_examples():
    assert alpha_equal(parse("\\e:E. \\x:E. x"), parse("\\u:E. \\v:E. v"))
    assert not alpha_equal(parse("\\e:E. \\x:E. e"), parse("\\e:E. \\x:E. x"))
    assert alpha_equal(Var("x", E), Var("x", E))
    assert not alpha_equal(Var("x", E), Var("x", N))


def test_finite_grammar():
    assert is_finite(C.build("Sigma"))
    assert not is_finite(parse("circ 0"))
    assert is_finite(C.minus(Var("a", N), parse("circ b")))
    assert not is_finite(parse("bullet a"))
    assert not is_finite(parse("SigB"))
    assert is_finite(parse("\\a:N. \\e:E. \\x:E. circ (dot a a) e x"))


def test_parse_errors():
    for bad in ["(circ a", "\\x. x", "circ a )", "\\x:Q. x", ""]:
        with pytest.raises(ParseError):
            parse(bad)


def test_parse_type_right_assoc():
    assert parse_type("E -> E -> E") == Arrow(E, Arrow(E, E))
    assert repr(parse_type("(N -> E) -> E")) == "(N -> E) -> E"


def test_annotated_and_default_types():
    assert parse("(x:Nb)") == Var("x", NB)
    assert parse("a") == Var("a", N)
    assert parse("f") == Var("f", EEE)


def test_combinator_reference():
    assert alpha_equal(parse("@bar0"), parse("\\e:E. \\x:E. e"))


def test_unicode_rendering():
    assert show_unicode(parse("\\a:Nb. circ a")) == "λa:N̄. ∘ a"


seeds = st.integers(min_value=0, max_value=10 ** 9)
calcs = st.sampled_from(["base-em", "emergent", "em-convex", "n-convex"])


@given(seeds, calcs)
def test_print_parse_round_trip(seed, calc):
    t = random_term(seed, calc)
    assert alpha_equal(parse(show(t)), t)


@given(seeds, seeds)
def test_substitution_commutes_with_typing(s1, s2):
    t = random_term(s1, "emergent")
    b = random_term(s2, "emergent", ty=E, max_depth=2)
    out = substitute(t, "x", E, b)
    assert infer_type(out) == infer_type(t)


def _rename(t, old, new):
    if isinstance(t, Lam):
        if t.var == old:
            return Lam(new, t.vtype, substitute(_rename(t.body, old, new), old, t.vtype,
                                               Var(new, t.vtype)))
        return Lam(t.var, t.vtype, _rename(t.body, old, new))
    if isinstance(t, App):
        return App(_rename(t.fun, old, new), _rename(t.arg, old, new))
    return t


@given(seeds)
def test_alpha_is_equivalence_and_renaming_invariant(seed):
    t = random_term(seed, "em-convex")
    u = _rename(t, "v1", "w_fresh")
    assert alpha_equal(t, t)
    assert alpha_equal(t, u) and alpha_equal(u, t)
    w = _rename(u, "v2", "w_other")
    assert alpha_equal(t, w)


@given(seeds, seeds)
def test_alpha_invariant_under_substitution(s1, s2):
    t = random_term(s1, "emergent")
    u = _rename(t, "v1", "w_fresh")
    b = random_term(s2, "emergent", ty=E, max_depth=2)
    assert alpha_equal(substitute(t, "y", E, b), substitute(u, "y", E, b))
