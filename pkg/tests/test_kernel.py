import dataclasses

import pytest
from hypothesis import given, strategies as st

from emcx import corpus
from emcx.kernel import (CyclicDependency, Lemma, LemmaDB, check_all,
                         check_script, replay, topo_order)
from emcx.sexpr import (Script, SexprError, read, script_from_text,
                        script_to_text, write)
from emcx.steps import (AbstractBothSides, ApplyBothSides, EmExtend,
                        Beta, ExtInjective, Refl, Rewrite, Symm, Trans, UseLemma)
from emcx.syntax import parse
from emcx.terms import E


@pytest.fixture(scope="module")
def scripts():
    return {s.name: s for s in corpus.load_scripts()}


@pytest.fixture(scope="module")
def db():
    return corpus.verified_db()


def test_difference_with_itself_replays(scripts, db):
    assert check_script(scripts["diff_self"], db).ok


def test_associativity_replays(scripts, db):
    v = check_script(scripts["grp_assoc"], db)
    assert v.ok and v.steps == len(scripts["grp_assoc"].steps)


def test_no_match_fails_at_the_step(db):
    s = Script("bad", "base-em", parse("circ a e y"), parse("y"),
               [Rewrite("R2", "l", (), "fwd"), Refl()])
    v = check_script(s, db)
    assert not v.ok and v.step == 0 and "NoMatch" in v.reason


def test_open_goal_fails(db):
    v = check_script(Script("open", "base-em", parse("circ 1 e x"), parse("x"), []), db)
    assert not v.ok and v.reason == "goal not closed"


def test_undeclared_dependency(scripts, db):
    s = dataclasses.replace(scripts["diff_self"], deps=())
    v = check_script(s, db)
    assert not v.ok and "undeclared" in v.reason


def test_missing_dependency():
    s = Script("m", "base-em", parse("dot a (star a)"), parse("1"),
               [UseLemma("nowhere", "l", (), "fwd"), Refl()], ("nowhere",))
    v = check_script(s, LemmaDB())
    assert not v.ok and "MissingDependency" in v.reason


def test_lemma_level_respected(db):
    s = Script("lvl", "base-em", parse("iotB e (iotB e x)"), parse("x"),
               [UseLemma("iotb_involutive", "l", (), "fwd"), Refl()], ("iotb_involutive",))
    assert not check_script(s, db).ok


def test_constants_outside_the_calculus(db):
    s = Script("c", "base-em", parse("circ 0 e x"), parse("e"), [])
    v = check_script(s, db)
    assert not v.ok and "bad goal" in v.reason


def test_em_needs_emergent(db):
    s = Script("em", "base-em", parse("\\a:Nb. \\e:E. \\x:E. Sig a e e x"),
               parse("\\a:Nb. \\e:E. \\x:E. x"), [EmExtend("asum_neutral_l")])
    assert not check_script(s, db).ok


def test_em_accepts_the_extension(db):
    s = Script("em", "emergent", parse("\\a:Nb. \\e:E. \\x:E. Sig a e e x"),
               parse("\\a:Nb. \\e:E. \\x:E. x"), [EmExtend("asum_neutral_l")],
               ("asum_neutral_l",))
    assert check_script(s, db).ok


def test_em_rejects_other_goal(db):
    s = Script("em", "emergent", parse("\\a:Nb. \\e:E. \\x:E. Sig a e x x"),
               parse("\\a:Nb. \\e:E. \\x:E. x"), [EmExtend("asum_neutral_l")],
               ("asum_neutral_l",))
    assert not check_script(s, db).ok


_ID_STEPS = [Rewrite("id", "l", (0, 0), "fwd"), Beta("l", (0,)), Beta("l", ())]


def test_symm_and_trans(db):
    s = Script("symm", "base-em", parse("x"), parse("circ 1 e x"),
               [Symm()] + _ID_STEPS + [Refl()])
    assert check_script(s, db).ok
    s = Script("trans", "base-em", parse("circ 1 e x"), parse("x"),
               [Trans(parse("x"))] + _ID_STEPS + [Refl(), Refl()])
    assert check_script(s, db).ok
    s = Script("trans-type", "base-em", parse("circ 1 e x"), parse("x"), [Trans(parse("a"))])
    assert not check_script(s, db).ok


def test_abstract_both_sides(db):
    s = Script("abs", "base-em", parse("\\y:E. circ 1 e y"), parse("\\z:E. z"),
               [AbstractBothSides("x", E)] + _ID_STEPS + [Refl()])
    assert check_script(s, db).ok
    s = Script("capture", "base-em", parse("\\y:E. circ 1 x y"), parse("\\z:E. z"),
               [AbstractBothSides("x", E)])
    assert not check_script(s, db).ok


def test_apply_both_sides(db):
    # from f y = g y nothing follows about f = g; the step goes the other way
    s = Script("app", "base-em", parse("circ 1 e y"), parse("(\\z:E. z) y"),
               [ApplyBothSides(parse("y")), Rewrite("id", "l", (0,), "fwd"),
                Beta("l", ()), Refl()])
    assert check_script(s, db).ok
    s = Script("app-bad", "base-em", parse("circ 1 e y"), parse("(\\z:E. z) x"),
               [ApplyBothSides(parse("y"))])
    assert not check_script(s, db).ok


# -- ExtInjective adversarial scripts ---------------------------------------

def _ext_script(lhs, rhs, const, calc="base-em"):
    return Script("ext", calc, parse(lhs), parse(rhs), [ExtInjective(const)])


@pytest.mark.parametrize("const", ["dot", "star", "Sig", "iot", "cvx", "SigB", "1", "eta", ""])
def test_ext_injective_only_through_dilations(const, db):
    v = check_script(_ext_script("a", "b", const), db)
    assert not v.ok and v.step == 0


def test_ext_injective_needs_node_sides(db):
    v = check_script(_ext_script("e", "x", "circ"), db)
    assert not v.ok and v.step == 0


def test_ext_injective_extended_nodes_need_convex(db):
    v = replay(parse("(u:Nb)"), parse("(u:Nb)"), [ExtInjective("circ"), Refl()], "emergent", db)
    assert not v.ok and v.step == 0
    v = replay(parse("(u:Nb)"), parse("(u:Nb)"), [ExtInjective("circ"), Refl()], "em-convex", db)
    assert v.ok


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyzBS", min_size=1, max_size=6))
def test_ext_injective_random_names(name):
    if name in ("circ", "bullet"):
        return
    v = replay(parse("a"), parse("a"), [ExtInjective(name), Refl()], "base-em", LemmaDB())
    assert not v.ok and v.step == 0


def test_ext_injective_sound_use(db):
    v = replay(parse("a"), parse("a"), [ExtInjective("circ"), Refl()], "base-em", db)
    assert v.ok


# -- postulates ---------------------------------------------------------------

def test_postulates_are_flagged(corpus_report):
    by = {e.name: e for e in corpus_report}
    post = [e for e in corpus_report if e.verdict == "postulate"]
    assert {e.name for e in post} == {"conv_delb", "conv_sigb", "conv_neg_one"}
    assert all(e.oracle for e in post)
    assert "conv_neg_one" in by["oplus_comm"].relies
    assert by["grp_assoc"].relies == ()
    assert by["oplus_comm"].as_dict()["relies_on_postulates"] == ["conv_neg_one"]


def test_false_postulate_rejected():
    s = Script("bogus", "emergent", parse("@bar0"), parse("@bar1"), postulate="wishful")
    [entry] = check_all([s])
    assert entry.verdict == "failed" and entry.oracle is False and not entry.accepted


def test_postulate_with_steps_rejected():
    s = Script("bogus", "base-em", parse("x"), parse("x"), [Refl()], postulate="why")
    [entry] = check_all([s])
    assert entry.verdict == "failed"


def test_blocked_by_failed_dependency(scripts):
    bad = dataclasses.replace(scripts["grp_inv_inv"], steps=[Refl()])
    pool = {**scripts, "grp_inv_inv": bad}
    entries = {e.name: e for e in check_all(pool.values(), oracle=False)}
    assert entries["grp_inv_inv"].verdict == "failed"
    assert entries["grp_assoc"].verdict in ("ok", "blocked")
    assert any(e.verdict == "blocked" for e in entries.values())


# -- the corpus ----------------------------------------------------------------

def test_corpus_all_accepted(corpus_report):
    bad = [(e.name, e.verdict, e.reason) for e in corpus_report if not e.accepted]
    assert not bad


def test_every_statement_has_one_script(scripts):
    db = corpus.statements()
    assert set(scripts) == {l.name for l in db}


def test_deleted_script_is_reported(scripts):
    pool = [s for n, s in scripts.items() if n != "succ_zero"]
    entries = check_all(pool, corpus.statements(), oracle=False)
    missing = [e for e in entries if e.verdict == "missing-script"]
    assert [e.name for e in missing] == ["succ_zero"]


def test_script_goal_must_match_statement(scripts):
    s = dataclasses.replace(scripts["grp_inv_one"], rhs=parse("star 1"))
    [entry] = [e for e in check_all([s], corpus.statements(), oracle=False) if e.name == "grp_inv_one"]
    assert entry.verdict == "failed"


def test_cycle_detected():
    a = Script("a", "base-em", parse("1"), parse("1"), [Refl()], ("b",))
    b = Script("b", "base-em", parse("1"), parse("1"), [Refl()], ("a",))
    with pytest.raises(CyclicDependency):
        topo_order([a, b])
    assert all(e.verdict == "failed" for e in check_all([a, b]))


def test_bundled_scripts_match_the_builder(scripts):
    built = corpus.build_all()
    assert len(built) == len(scripts)
    for s in built:
        assert s.same_as(scripts[s.name]), s.name


def test_script_text_round_trip_is_exact():
    for p in sorted(corpus.SCRIPT_DIR.glob("*.emcx")):
        text = p.read_text(encoding="utf-8")
        assert script_to_text(script_from_text(text)) == text, p.name


def test_sexpr_reader():
    assert read('(a (b "c d") ; note\n e)') == ["a", ["b", "c d"], "e"]
    assert write(read('(x "q\\"uote")')) == '(x "q\\"uote")'
    for bad in ["(a", "a)", "(a) b", '("open'] :
        with pytest.raises(SexprError):
            read(bad)


def test_bad_script_text():
    with pytest.raises(SexprError):
        script_from_text('(script s (calculus base-em) (goal "x" "x") (steps (Jump)))')
    with pytest.raises(SexprError):
        script_from_text('(script s (goal "x" "x"))')
    with pytest.raises(SexprError):
        script_from_text('(script s (calculus base-em) (goal "x" "x") (steps (Beta l (0 2))))')
