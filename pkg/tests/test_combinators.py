from fractions import Fraction

import pytest

from emcx import combinators as C
from emcx.corpus import verified_db
from emcx.kernel import replay_proof
from emcx.model import evaluate, oracle_equal
from emcx.rewrite import normalize, prove_equal
from emcx.syntax import parse
from emcx.terms import EEE, E, N, Var, alpha_equal, infer_type


@pytest.fixture(scope="module")
def db():
    return verified_db()


def test_bar0_literal():
    assert alpha_equal(C.build("bar0"), parse("\\e:E. \\x:E. e"))


def test_iota_literal():
    assert alpha_equal(C.build("iota"),
                       parse("\\a:N. \\e:E. \\x:E. circ (star a) (circ a e x) e"))


def test_mul_literal():
    f, g = Var("F", EEE), Var("G", EEE)
    assert alpha_equal(C.build("mulE", [f, g]), parse("\\e:E. \\x:E. (F:E->E->E) e ((G:E->E->E) e x)"))


def test_arity_and_type_errors():
    with pytest.raises(C.ArityMismatch):
        C.build("bar0", [parse("1")])
    with pytest.raises(C.CombinatorTypeMismatch):
        C.build("iota", [parse("e")])
    with pytest.raises(C.ArityMismatch):
        C.build("natural", [parse("1")])


@pytest.mark.parametrize("name", sorted(C.REGISTRY))
def test_every_combinator_closed_and_typed(name):
    t = C.build(name)
    infer_type(t)
    from emcx.terms import free_vars
    assert not free_vars(t)


def test_natural_one_and_two():
    assert alpha_equal(normalize(C.natural(1), "emergent").term, C.build("bar1"))
    assert alpha_equal(normalize(C.natural(2), "emergent").term,
                       parse("\\e:E. \\x:E. iotB x e"))


def test_natural_four_in_the_model():
    v = evaluate(C.natural(4), {})
    e, x = (Fraction(1, 3),), (Fraction(-2, 5),)
    assert v(e)(x) == (e[0] + 4 * (x[0] - e[0]),)


def test_natural_memoized():
    assert C.natural(5) is C.natural(5)


def test_natural_rejects_negative():
    with pytest.raises(ValueError):
        C.natural(-1)


@pytest.mark.parametrize("src", ["@bar0", "circ a", "@bar1"])
def test_is_bin_examples(src, db):
    verdict, proof = C.is_bin(parse(src))
    assert verdict is True
    assert replay_proof(proof, "emergent", db).ok


@pytest.mark.parametrize("n", range(9))
def test_naturals_are_bin(n, db):
    verdict, proof = C.is_bin(C.natural(n))
    assert verdict is True
    assert replay_proof(proof, "emergent", db).ok


def test_is_bin_unknown_is_not_a_refutation():
    verdict, proof = C.is_bin(parse("\\e:E. \\x:E. x"), budget=10)
    assert verdict is True
    verdict, proof = C.is_bin(parse("f"), budget=50)
    assert verdict == "unknown" and proof is None


@pytest.mark.parametrize("n", range(7))
def test_loos_power(n):
    rhs = parse("\\e:E. \\x:E. (n:E->E->E) (iotB x e) (iotB (iotB x e) x)")
    from emcx.terms import substitute
    rhs = substitute(rhs, "n", EEE, C.natural(n))
    proof = prove_equal(C.natural(n + 2), rhs, "emergent")
    assert proof is not None and replay_proof(proof, "emergent").ok


def test_difference_chain():
    a, b = Var("A", N), Var("B", EEE)
    lhs = C.minus(a, C.minus(a, b))
    proof = prove_equal(lhs, b, "base-em")
    assert proof is not None and replay_proof(proof, "base-em").ok


def test_bin_closure_instance(db):
    # A - B is BIN for a finite BIN term B
    t = C.minus(Var("a", N), parse("circ b"))
    verdict, proof = C.is_bin(t)
    assert verdict is True and replay_proof(proof, "emergent", db).ok


def test_newdil_fixes_dilation():
    t = C.build("newdil", [parse("c"), parse("a"), parse("circ b")])
    assert oracle_equal(t, parse("circ (cvx c a b)"))
