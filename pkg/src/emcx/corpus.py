"""The bundled lemma corpus.

Each entry is a recipe that drives a :class:`~emcx.tactics.ProofBuilder`;
running the recipes produces the proof scripts shipped in ``scripts/``.
``python -m emcx.corpus`` regenerates those files.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import NamedTuple

from . import combinators as C
from .kernel import Lemma, LemmaDB, check_script
from .sexpr import Script, script_from_text, script_to_text
from .syntax import parse, show
from .tactics import ProofBuilder
from .terms import App, Const, Var, E, N, NB

SCRIPT_DIR = Path(__file__).with_name("scripts")

class Recipe(NamedTuple):
    name: str
    calculus: str
    lhs: object
    rhs: object
    hyps: tuple
    topic: str
    fn: object
    postulate: str = ""


RECIPES: list = []


def recipe(name, calculus, lhs, rhs, hyps=(), topic=""):
    """Register a proof recipe; the decorated function fills in the steps."""
    def wrap(fn):
        RECIPES.append(Recipe(name, calculus, lhs, rhs, tuple(hyps), topic, fn))
        return fn
    return wrap


def postulate(name, calculus, lhs, rhs, reason, topic=""):
    """Register an equation accepted on the model oracle instead of a proof."""
    RECIPES.append(Recipe(name, calculus, lhs, rhs, (), topic, None, reason))


def _t(x):
    return parse(x) if isinstance(x, str) else x


def show_c(name, *args):
    """ASCII text of a built combinator (for use inside larger statements)."""
    return "(" + show(C.build(name, [_t(a) for a in args])) + ")"


# --------------------------------------------------------------------------- #
# the commutative group of nodes
# --------------------------------------------------------------------------- #

@recipe("grp_inv_inv", "base-em", "star (star a)", "a", topic="node group")
def _(p):
    p.ext_inj()
    p.rw("in-inv", "r", at="circ a", direction="bwd")
    p.rw("in", "r", at="bullet (star a)")


@recipe("grp_inv_one", "base-em", "star 1", "1", topic="node group")
def _(p):
    p.ext_inj()
    p.rw("in", "l", at="circ (star 1)", direction="bwd")
    p.rw("id-bullet", "l", at="bullet 1")
    p.rw("id", "r", at="circ 1")


def _unfold_circ_product(p, side, target):
    """``circ (dot A B)`` -> ``\\e.\\x. circ A e (circ B e x)``."""
    path = p.find(side, target)
    from .steps import Eta
    p.step(Eta(side, path, "bwd"))
    inner = path + (0, 0)
    p.rw("act", side, path=inner, direction="bwd")


@recipe("grp_mul_inv", "base-em", "dot a (star a)", "1", topic="node group")
def _(p):
    p.ext_inj()
    _unfold_circ_product(p, "l", "circ (dot a (star a))")
    p.rw("in", "l", at="circ (star a)", direction="bwd")
    p.rw("R2", "l")
    p.rw("id", "r")


@recipe("grp_assoc", "base-em", "dot a (dot b c)", "dot (dot a b) c", topic="node group")
def _(p):
    p.ext_inj()
    _unfold_circ_product(p, "l", "circ (dot a (dot b c))")
    p.rw("act", "l", at="circ (dot b c) e x", direction="bwd")
    _unfold_circ_product(p, "r", "circ (dot (dot a b) c)")
    p.rw("act", "r", at="circ (dot a b) e (circ c e x)", direction="bwd")


@recipe("grp_unit", "base-em", "dot a 1", "a", topic="node group")
def _(p):
    p.ext_inj()
    _unfold_circ_product(p, "l", "circ (dot a 1)")
    p.rw("id", "l", at="circ 1")
    p.beta("l")
    from .steps import Eta
    p.step(Eta("l", (), "fwd"))


@recipe("grp_inv_mul_aux", "base-em", "dot (dot a b) (dot (star a) (star b))", "1",
        topic="node group")
def _(p):
    p.use("grp_assoc", "l", direction="bwd", path=())
    p.use("grp_assoc", "l", at="dot b (dot (star a) (star b))")
    p.rw("C", "l", at="dot b (star a)")
    p.use("grp_assoc", "l", at="dot (dot (star a) b) (star b)", direction="bwd")
    p.use("grp_mul_inv", "l", at="dot b (star b)")
    p.use("grp_unit", "l", at="dot (star a) 1")
    p.use("grp_mul_inv", "l", at="dot a (star a)")


@recipe("grp_inv_mul", "base-em", "star (dot a b)", "dot (star a) (star b)", topic="node group")
def _(p):
    q = "dot (star a) (star b)"
    p.use("grp_unit", "l", path=(), direction="bwd")
    p.use("grp_inv_mul_aux", "l", at="1", direction="bwd", subst={"a": "a", "b": "b"})
    p.use("grp_assoc", "l", path=())
    p.rw("C", "l", at="dot (star (dot a b)) (dot a b)")
    p.use("grp_mul_inv", "l", at="dot (dot a b) (star (dot a b))")
    p.rw("C", "l", path=())
    p.use("grp_unit", "l", path=())


# --------------------------------------------------------------------------- #
# edges as an N-indexed family of idempotent right quasigroups
# --------------------------------------------------------------------------- #

def _normal(p):
    p.norm()


for _name, _l, _r in [
    ("nirq_R1", "circ a e e", "e"),
    ("nirq_R1_bullet", "bullet a e e", "e"),
    ("nirq_R2", "circ a e (bullet a e x)", "x"),
    ("nirq_R2_bullet", "bullet a e (circ a e x)", "x"),
    ("nirq_unit", "circ 1 e x", "x"),
    ("nirq_unit_bullet", "bullet 1 e x", "x"),
    ("nirq_inverse", "circ (star a) e x", "bullet a e x"),
    ("nirq_compose", "circ a e (circ b e x)", "circ (dot a b) e x"),
]:
    recipe(_name, "base-em", _l, _r, topic="N-irq")(_normal)


# --------------------------------------------------------------------------- #
# products of E -> E -> E terms
# --------------------------------------------------------------------------- #

for _name, _l, _r in [
    ("mul_zero_left", show_c("mulE", "@bar0", "f"), "@bar0"),
    ("mul_one_left", show_c("mulE", "circ 1", "f"), "f"),
    ("mul_one_right", show_c("mulE", "f", "circ 1"), "f"),
    ("mul_circ_zero", show_c("mulE", "circ a", "@bar0"), "@bar0"),
    ("mul_circ_circ", show_c("mulE", "circ a", "circ b"), "circ (dot a b)"),
]:
    recipe(_name, "base-em", _l, _r, topic="products")(_normal)


# --------------------------------------------------------------------------- #
# differences
# --------------------------------------------------------------------------- #

recipe("diff_self", "base-em", show_c("diff", "a", "a"), "@bar0", topic="differences")(_normal)


@recipe("diff_self_not_dilation", "base-em", "@bar0", "@bar1",
        hyps=[("h", show_c("diff", "a", "a"), "circ b")], topic="differences")
def _(p):
    p.rw("id", "r", path=(), direction="bwd")
    p.use("grp_mul_inv", "r", at="1", direction="bwd", subst={"a": "b"})
    _unfold_circ_product(p, "r", "circ (dot b (star b))")
    p.use("h", "r", at="circ b", direction="bwd")
    p.norm()


recipe("diff_zero", "base-em", show_c("diffB", "@bar0"), "\\a:N. circ a",
       topic="differences")(_normal)
recipe("diff_one", "base-em", show_c("diffB", "circ 1"), "@iota", topic="differences")(_normal)
recipe("diff_from_one", "base-em",
       "\\a:N. \\e:E. \\x:E. " + show_c("diffB", "circ a") + " 1 e x",
       "\\a:N. \\e:E. \\x:E. circ a x e", topic="differences")(_normal)
recipe("diff_diff", "base-em", show_c("diffB", show_c("diffB", "f", "a")) + " a", "f",
       topic="differences")(_normal)


# --------------------------------------------------------------------------- #
# approximate operations
# --------------------------------------------------------------------------- #

_A4 = "\\a:N. \\e:E. \\x:E. \\y:E. "
_A5 = "\\a:N. \\e:E. \\x:E. \\y:E. \\z:E. "
_A3 = "\\a:N. \\e:E. \\x:E. "
_B5 = "\\b:N. \\a:N. \\e:E. \\x:E. \\y:E. "
_B4 = "\\b:N. \\a:N. \\e:E. \\x:E. "

APPROX = [
    ("asum_adif_l", _A4 + "Sig a e x (Del a e x y)", _A4 + "y"),
    ("asum_adif_r", _A4 + "Del a e x (Sig a e x y)", _A4 + "y"),
    ("adif_from_asum", _A4 + "Sig a (circ a e x) (iot a e x) y", _A4 + "Del a e x y"),
    ("asum_assoc", _A5 + "Sig a e (Sig a e x y) z", _A5 + "Sig a e x (Sig a (circ a e x) y z)"),
    ("ainv_involutive", _A3 + "iot a (circ a e x) (iot a e x)", _A3 + "x"),
    ("ainv_fix", "\\a:N. \\e:E. iot a e e", "\\a:N. \\e:E. e"),
    ("asum_neutral_l", _A3 + "Sig a e e x", _A3 + "x"),
    ("asum_neutral_r", _A3 + "Sig a e x (circ a e x)", _A3 + "x"),
    ("asum_distrib", _B5 + "circ b e (Sig (dot a b) e x y)",
     _B5 + "Sig a e (circ b e x) (circ b (circ (dot a b) e x) y)"),
    ("ainv_commutes", _B4 + "circ b (circ (dot a b) e x) (iot (dot a b) e x)",
     _B4 + "iot a e (circ b e x)"),
]
for _name, _l, _r in APPROX:
    recipe(_name, "base-em", _l, _r, topic="approximate operations")(_normal)


# --------------------------------------------------------------------------- #
# the emergent group of edges
# --------------------------------------------------------------------------- #

def _apply(t, args):
    for a in args:
        t = App(t, _t(a))
    return t


def via_extension(p, finite, args, variant="em"):
    """Replace the goal ``l = r`` by ``Ext[rhs of finite] args = r``.

    The step from ``l`` to the applied extension of the finite left side is
    closed by normalization, that between the two extensions by (em).
    """
    from .extension import em_step
    lem = p.ctx.lemma(finite)
    l2, r2 = em_step(lem.lhs, lem.rhs, variant=variant)
    p.trans(_apply(l2, args))
    p.close()
    p.trans(_apply(r2, args))
    for a in reversed(args):
        p.apply_both(a)
    p.em(finite, variant)


def extended(finite, *args, variant="em"):
    """Recipe body: the goal is the extension of ``finite`` applied to ``args``."""
    def body(p):
        via_extension(p, finite, args, variant)
        p.close()
    return body


def _pointwise(p):
    """``f = g`` at type ``E -> E -> E`` -> ``f e x = g e x``."""
    from .steps import Eta
    p.step(Eta("l", (), "bwd"))
    p.step(Eta("r", (), "bwd"))
    p.abstract("e", "E")
    p.abstract("x", "E")


EMERGENT = [
    ("sigb_assoc", "SigB e (SigB e x y) z", "SigB e x (SigB e y z)", "asum_assoc", ["0", "e", "x", "y", "z"]),
    ("sigb_neutral_l", "SigB e e x", "x", "asum_neutral_l", ["0", "e", "x"]),
    ("sigb_neutral_r", "SigB e x e", "x", "asum_neutral_r", ["0", "e", "x"]),
    ("iotb_involutive", "iotB e (iotB e x)", "x", "ainv_involutive", ["0", "e", "x"]),
    ("iotb_fix", "iotB e e", "e", "ainv_fix", ["0", "e"]),
    ("sigb_delb", "SigB e x (DelB e x y)", "y", "asum_adif_l", ["0", "e", "x", "y"]),
    ("delb_sigb", "DelB e x (SigB e x y)", "y", "asum_adif_r", ["0", "e", "x", "y"]),
    ("delb_from_sigb", "SigB e (iotB e x) y", "DelB e x y", "adif_from_asum", ["0", "e", "x", "y"]),
    ("scal_morph_sum", "circ (b:Nb) e (SigB e x y)", "SigB e (circ (b:Nb) e x) (circ (b:Nb) e y)",
     "asum_distrib", ["(b:Nb)", "0", "e", "x", "y"]),
    ("scal_morph_inv", "circ (b:Nb) e (iotB e x)", "iotB e (circ (b:Nb) e x)",
     "ainv_commutes", ["(b:Nb)", "0", "e", "x"]),
    ("scal_action", "circ (a:Nb) e (circ (b:Nb) e x)", "circ (dot (a:Nb) (b:Nb)) e x",
     "mul_circ_circ", ["e", "x"]),
]
for _name, _l, _r, _fin, _args in EMERGENT:
    recipe(_name, "emergent", _l, _r, topic="emergent group")(extended(_fin, *_args))


@recipe("sigb_inverse_l", "emergent", "SigB e (iotB e x) x", "e", topic="emergent group")
def _(p):
    p.use("delb_sigb", "r", path=(), direction="bwd", subst={"e": "e", "x": "x", "y": "e"})
    p.use("sigb_neutral_r", "r", at="SigB e x e")
    p.use("delb_from_sigb", "r", path=(), direction="bwd")


@recipe("sigb_inverse_r", "emergent", "SigB e x (iotB e x)", "e", topic="emergent group")
def _(p):
    p.use("sigb_delb", "r", path=(), direction="bwd", subst={"e": "e", "x": "x", "y": "e"})
    p.use("delb_from_sigb", "r", at="DelB e x e", direction="bwd")
    p.use("sigb_neutral_r", "r", at="SigB e (iotB e x) e")
    p.refl()


# --------------------------------------------------------------------------- #
# numbers
# --------------------------------------------------------------------------- #

_BIN_HYP = ("hbin", show_c("mulE", "f", "@bar0"), "@bar0")


def _bin_closure(p):
    p.norm()
    p.use("hbin", "r", path=(), direction="bwd")
    p.norm("r")


recipe("bin_diff", "emergent", show_c("mulE", show_c("diffB", "f", "a"), "@bar0"), "@bar0",
       hyps=[_BIN_HYP], topic="numbers")(_bin_closure)
recipe("bin_newdil", "emergent", show_c("mulE", show_c("newdil", "c", "a", "f"), "@bar0"),
       "@bar0", hyps=[_BIN_HYP], topic="numbers")(_bin_closure)
recipe("newdil_fixes_dilation", "emergent", show_c("newdil", "c", "a", "circ a"), "circ a",
       topic="numbers")(_normal)
recipe("newdil_one", "emergent", show_c("newdil", "1", "a", "f"), "f",
       topic="numbers")(_normal)
recipe("newdil_compose", "emergent", show_c("newdil", "c", "a", show_c("newdil", "d", "a", "f")),
       show_c("newdil", "dot c d", "a", "f"), topic="numbers")(_normal)
recipe("natural_one", "emergent", show(C.natural(1)), "@bar1", topic="numbers")(_normal)
recipe("natural_two", "emergent", show(C.natural(2)), "\\e:E. \\x:E. iotB x e",
       topic="numbers")(_normal)
recipe("natural_step", "emergent", show(C.natural(4)),
       "\\e:E. \\x:E. " + "(" + show(C.natural(3)) + ") x (iotB x e)", topic="numbers")(_normal)
for _n in range(7):
    recipe(f"natural_power_{_n}", "emergent", show(C.natural(_n + 2)),
           "\\e:E. \\x:E. (" + show(C.natural(_n)) + ") (iotB x e) (iotB (iotB x e) x)",
           topic="numbers")(_normal)


# --------------------------------------------------------------------------- #
# convex combinations of nodes
# --------------------------------------------------------------------------- #

def _convex_backward(*targets, side="l"):
    def body(p):
        p.ext_inj()
        for t in targets:
            p.rw("convex", side, at=t, direction="bwd")
        p.norm()
    return body


recipe("cvx_R1_fin", "em-convex", "cvx c a a", "a", topic="convex")(
    _convex_backward("circ (cvx c a a)"))
recipe("cvx_id_fin", "em-convex", "cvx 1 a b", "b", topic="convex")(
    _convex_backward("circ (cvx 1 a b)"))


@recipe("cvx_act_fin", "em-convex", "cvx c a (cvx d a b)", "cvx (dot c d) a b", topic="convex")
def _(p):
    p.ext_inj()
    p.rw("convex", "l", at="circ (cvx c a (cvx d a b))", direction="bwd")
    p.rw("convex", "l", at="circ (cvx d a b)", direction="bwd")
    p.rw("convex", "r", at="circ (cvx (dot c d) a b)", direction="bwd")
    p.norm()


for _name, _l, _r, _fin in [
        ("cvx_R1", "cvx (c:Nb) (a:Nb) (a:Nb)", "(a:Nb)", "cvx_R1_fin"),
        ("cvx_id", "cvx 1 (a:Nb) (b:Nb)", "(b:Nb)", "cvx_id_fin"),
        ("cvx_act", "cvx (c:Nb) (a:Nb) (cvx (d:Nb) (a:Nb) (b:Nb))",
         "cvx (dot (c:Nb) (d:Nb)) (a:Nb) (b:Nb)", "cvx_act_fin")]:
    recipe(_name, "em-convex", _l, _r, topic="convex")(lambda p, _fin=_fin: p.em(_fin))


@recipe("cvx_R2_fin", "em-convex", "cvx c a (icvx c a b)", "b", topic="convex")
def _(p):
    p.rw("icvx-def", "l")
    p.use("cvx_act_fin", "l")
    p.norm()
    p.use("cvx_id_fin", "l")


recipe("cvx_R2", "n-convex", "cvx c (a:Nb) (icvx c (a:Nb) (b:Nb))", "(b:Nb)",
       topic="convex")(_normal)


@recipe("dot_comm", "base-em", "dot a b", "dot b a", topic="convex")
def _(p):
    p.rw("C", "l")


recipe("dot_comm_nb", "emergent", "dot (a:Nb) (b:Nb)", "dot (b:Nb) (a:Nb)",
       topic="convex")(lambda p: p.em("dot_comm"))
recipe("dot_unit_nb", "emergent", "dot (a:Nb) 1", "(a:Nb)",
       topic="convex")(lambda p: p.em("grp_unit"))
recipe("dot_assoc_nb", "emergent", "dot (a:Nb) (dot (b:Nb) (c:Nb))",
       "dot (dot (a:Nb) (b:Nb)) (c:Nb)", topic="convex")(lambda p: p.em("grp_assoc"))

recipe("mul_diff", "base-em", show_c("mulE", show_c("diffB", "f", "a"), "circ c"),
       show_c("diffB", show_c("mulE", "f", "circ c"), "dot a c"), topic="convex")(_normal)

_CU = "(circ a e x)"
_CW = f"(circ c {_CU} (iot a e x))"


@recipe("cvx_unfold_fin", "em-convex", "\\a:N. \\b:N. \\c:N. \\e:E. \\x:E. circ (cvx c a b) e x",
        f"\\a:N. \\b:N. \\c:N. \\e:E. \\x:E. circ b (circ a {_CU} {_CW}) (iot a {_CU} {_CW})",
        topic="convex")
def _(p):
    for v, ty in [("a", "N"), ("b", "N"), ("c", "N"), ("e", "E"), ("x", "E")]:
        p.abstract(v, ty)
    p.rw("convex", "l", at="circ (cvx c a b)", direction="bwd")
    p.norm()


@recipe("cvx_zero_base", "em-convex", "cvx (c:Nb) 0 (b:Nb)", "dot (b:Nb) (c:Nb)", topic="convex")
def _(p):
    p.ext_inj()
    _pointwise(p)
    via_extension(p, "cvx_unfold_fin", ["0", "(b:Nb)", "(c:Nb)", "e", "x"])
    p.norm()
    p.use("scal_morph_inv", "l", at="circ (c:Nb) e (iotB e x)")
    p.use("iotb_involutive", "l")
    p.use("scal_action", "l")


@recipe("bary_fin", "em-convex", "\\a:N. \\b:N. \\e:E. \\x:E. circ (cvx a 1 b) e x",
        "\\a:N. \\b:N. \\e:E. \\x:E. circ b (circ a x e) x", topic="convex")
def _(p):
    for v, ty in [("a", "N"), ("b", "N"), ("e", "E"), ("x", "E")]:
        p.abstract(v, ty)
    p.rw("convex", "l", at="circ (cvx a 1 b)", direction="bwd")
    p.norm()


recipe("bary", "em-convex", "circ (cvx (a:Nb) 1 0) e x", "circ (a:Nb) x e", topic="convex")(
    extended("bary_fin", "(a:Nb)", "0", "e", "x"))


@recipe("bary_diff", "em-convex", show_c("diffB", "circ a", "1"), "circ (cvx a 1 0)",
        topic="convex")
def _(p):
    _pointwise(p)
    p.use("bary", "r")
    p.norm()


# --------------------------------------------------------------------------- #
# the field of extended nodes
# --------------------------------------------------------------------------- #

def _on_nodes(text):
    """An edge statement read in the node-only calculus."""
    for a, b in [("\\e:E", "\\e:Nb"), ("\\x:E", "\\x:Nb"), ("\\y:E", "\\y:Nb"),
                 ("\\z:E", "\\z:Nb"), ("Sig ", "sig "), ("Del ", "del "), ("iot ", "jj "),
                 ("circ ", "cvx ")]:
        text = text.replace(a, b)
    return text


def _nb(text):
    """Annotate the free variables of ``text`` as extended nodes."""
    return re.sub(r"(?<![\w:?'])([a-ex-z])(?![\w:'])", r"(\1:Nb)", text)


for _name, _l, _r in APPROX:
    recipe("n" + _name, "n-convex", _on_nodes(_l), _on_nodes(_r),
           topic="node operations")(_normal)

NODE_GROUP = [
    ("nsigb_assoc", "sigB e (sigB e x y) z", "sigB e x (sigB e y z)", "nasum_assoc",
     ["0", "e", "x", "y", "z"]),
    ("nsigb_neutral_l", "sigB e e x", "x", "nasum_neutral_l", ["0", "e", "x"]),
    ("nsigb_neutral_r", "sigB e x e", "x", "nasum_neutral_r", ["0", "e", "x"]),
    ("njb_involutive", "jB e (jB e x)", "x", "nainv_involutive", ["0", "e", "x"]),
    ("nsigb_delb", "sigB e x (delB e x y)", "y", "nasum_adif_l", ["0", "e", "x", "y"]),
    ("ndelb_sigb", "delB e x (sigB e x y)", "y", "nasum_adif_r", ["0", "e", "x", "y"]),
    ("ndelb_from_sigb", "sigB e (jB e x) y", "delB e x y", "nadif_from_asum",
     ["0", "e", "x", "y"]),
    ("nscal_morph_sum", "cvx b e (sigB e x y)", "sigB e (cvx b e x) (cvx b e y)",
     "nasum_distrib", ["b", "0", "e", "x", "y"]),
    ("nscal_morph_inv", "cvx b e (jB e x)", "jB e (cvx b e x)", "nainv_commutes",
     ["b", "0", "e", "x"]),
]
for _name, _l, _r, _fin, _args in NODE_GROUP:
    recipe(_name, "n-convex", _nb(_l), _nb(_r), topic="node operations")(
        extended(_fin, *[_nb(a) for a in _args], variant="emc"))


@recipe("nsigb_inverse_l", "n-convex", _nb("sigB e (jB e x) x"), _nb("e"), topic="node operations")
def _(p):
    p.use("ndelb_sigb", "r", path=(), direction="bwd",
          subst={"e": _nb("e"), "x": _nb("x"), "y": _nb("e")})
    p.use("nsigb_neutral_r", "r", at=_nb("sigB e x e"))
    p.use("ndelb_from_sigb", "r", path=(), direction="bwd")


@recipe("nsigb_inverse_r", "n-convex", _nb("sigB e x (jB e x)"), _nb("e"), topic="node operations")
def _(p):
    p.use("nsigb_delb", "r", path=(), direction="bwd",
          subst={"e": _nb("e"), "x": _nb("x"), "y": _nb("e")})
    p.use("ndelb_from_sigb", "r", at=_nb("delB e x e"), direction="bwd")
    p.use("nsigb_neutral_r", "r", at=_nb("sigB e (jB e x) e"))


def _field(name, lhs, rhs):
    return recipe(name, "n-convex", _nb(lhs), _nb(rhs), topic="field")


def _by(*uses):
    """Recipe body: a chain of forward lemma uses on the left side."""
    def body(p):
        for u in uses:
            p.use(u, "l")
    return body


_field("field_add_assoc", "sigB 0 (sigB 0 a b) c", "sigB 0 a (sigB 0 b c)")(_by("nsigb_assoc"))
_field("field_add_zero_l", "sigB 0 0 a", "a")(_by("nsigb_neutral_l"))
_field("field_add_zero_r", "sigB 0 a 0", "a")(_by("nsigb_neutral_r"))
_field("field_add_neg", "sigB 0 a (jB 0 a)", "0")(_by("nsigb_inverse_r"))
_field("field_neg_add", "sigB 0 (jB 0 a) a", "0")(_by("nsigb_inverse_l"))
_field("field_mul", "cvx a 0 b", "dot b a")(_by("cvx_zero_base"))
_field("field_mul_one", "cvx 1 0 b", "b")(_by("cvx_id"))
_field("field_distrib", "cvx c 0 (sigB 0 a b)", "sigB 0 (cvx c 0 a) (cvx c 0 b)")(
    _by("nscal_morph_sum"))
_field("field_neg_one", "cvx b 0 (jB 0 1)", "jB 0 b")(
    _by("nscal_morph_inv", "cvx_zero_base", "dot_comm_nb", "dot_unit_nb"))


@recipe("field_mul_inv", "n-convex", "cvx (star a) 0 a", "1", topic="field")
def _(p):
    p.use("cvx_zero_base", "l")
    p.norm()


@_field("field_mul_comm", "cvx a 0 b", "cvx b 0 a")
def _(p):
    p.use("cvx_zero_base", "l")
    p.use("cvx_zero_base", "r")
    p.use("dot_comm_nb", "l")


@_field("field_mul_assoc", "cvx a 0 (cvx b 0 c)", "cvx (cvx a 0 b) 0 c")
def _(p):
    for side in "lr":
        p.use("cvx_zero_base", side)
        p.use("cvx_zero_base", side)
    p.use("dot_assoc_nb", "r")


@_field("field_neg_scal", "jB 0 b", "cvx (jB 0 1) 0 b")
def _(p):
    p.use("field_neg_one", "l", direction="bwd")
    p.use("field_mul_comm", "l")


@_field("field_neg_sum", "jB 0 (sigB 0 a b)", "sigB 0 (jB 0 a) (jB 0 b)")
def _(p):
    p.use("field_neg_scal", "l")
    p.use("field_distrib", "l")
    p.use("field_neg_scal", "r", at=_nb("jB 0 a"))
    p.use("field_neg_scal", "r", at=_nb("jB 0 b"))


@_field("field_sum_neg_rev", "sigB 0 (sigB 0 a b) (sigB 0 (jB 0 b) (jB 0 a))", "0")
def _(p):
    p.use("field_add_assoc", "l", path=())
    p.use("field_add_assoc", "l", at=_nb("sigB 0 b (sigB 0 (jB 0 b) (jB 0 a))"), direction="bwd")
    p.use("field_add_neg", "l")
    p.use("field_add_zero_l", "l")
    p.use("field_add_neg", "l")


@_field("field_neg_anti", "jB 0 (sigB 0 a b)", "sigB 0 (jB 0 b) (jB 0 a)")
def _(p):
    p.use("field_add_zero_r", "l", path=(), direction="bwd")
    p.use("field_sum_neg_rev", "l", path=(1,), direction="bwd",
          subst={"a": _nb("a"), "b": _nb("b")})
    p.use("field_add_assoc", "l", path=(), direction="bwd")
    p.use("field_neg_add", "l")
    p.use("field_add_zero_l", "l")


@_field("field_add_comm", "sigB 0 a b", "sigB 0 b a")
def _(p):
    p.use("njb_involutive", "l", at=_nb("a"), direction="bwd", subst={"e": "0"})
    p.use("njb_involutive", "l", at=_nb("b"), direction="bwd", subst={"e": "0"})
    p.use("field_neg_sum", "l", path=(), direction="bwd")
    p.use("field_neg_anti", "l")
    p.use("njb_involutive", "l")
    p.use("njb_involutive", "l")


# --------------------------------------------------------------------------- #
# nodes acting on edges, and commutativity of the edge sum
# --------------------------------------------------------------------------- #

_NOT_FINITE = ("the left side has 0 in a base-point position, so it is not a finite term "
               "and (em) does not apply; checked on the model only")
postulate("conv_delb", "em-convex", "circ (delB 0 b d) e x",
          "circ d (circ b e (iotB e x)) (iot b e (iotB e x))", _NOT_FINITE, topic="nodes on edges")
postulate("conv_sigb", "em-convex", "circ (sigB 0 b d) e x",
          "circ d (circ b e x) (iotB (circ b e x) (iot b e x))", _NOT_FINITE,
          topic="nodes on edges")
postulate("conv_neg_one", "em-convex", "circ (jB 0 1) e x", "iotB e x", _NOT_FINITE,
          topic="nodes on edges")


@recipe("conv_jb", "n-convex", "circ (jB 0 b) e x", "circ b e (iotB e x)", topic="nodes on edges")
def _(p):
    p.use("field_neg_scal", "l", at="jB 0 b")
    p.use("field_mul", "l")
    p.use("scal_action", "l", direction="bwd")
    p.use("conv_neg_one", "l")


@recipe("iotb_sum", "em-convex", "iotB e (SigB e x y)", "SigB e (iotB e x) (iotB e y)",
        topic="nodes on edges")
def _(p):
    p.use("conv_neg_one", "l", path=(), direction="bwd")
    p.use("scal_morph_sum", "l")
    p.use("conv_neg_one", "l", at="circ (jB 0 1) e x")
    p.use("conv_neg_one", "l", at="circ (jB 0 1) e y")


@recipe("sigb_sum_inv_rev", "emergent", "SigB e (SigB e x y) (SigB e (iotB e y) (iotB e x))", "e",
        topic="nodes on edges")
def _(p):
    p.use("sigb_assoc", "l", path=())
    p.use("sigb_assoc", "l", at="SigB e y (SigB e (iotB e y) (iotB e x))", direction="bwd")
    p.use("sigb_inverse_r", "l")
    p.use("sigb_neutral_l", "l")
    p.use("sigb_inverse_r", "l")


@recipe("iotb_anti", "emergent", "iotB e (SigB e x y)", "SigB e (iotB e y) (iotB e x)",
        topic="nodes on edges")
def _(p):
    p.use("sigb_neutral_r", "l", path=(), direction="bwd", subst={"e": "e"})
    p.use("sigb_sum_inv_rev", "l", path=(1,), direction="bwd", subst={"x": "x", "y": "y"})
    p.use("sigb_assoc", "l", path=(), direction="bwd")
    p.use("sigb_inverse_l", "l")
    p.use("sigb_neutral_l", "l")


recipe("infdil_fin", "base-em", show_c("infdil", "c", "a") + " e x y",
       "Sig a e x (circ c (circ a e x) (Del a e x y))", topic="nodes on edges")(_normal)


@recipe("oplus_comm", "em-convex", "SigB e x y", "SigB e y x", topic="nodes on edges")
def _(p):
    p.use("iotb_involutive", "l", at="x", direction="bwd", subst={"e": "e"})
    p.use("iotb_involutive", "l", at="y", direction="bwd", subst={"e": "e"})
    p.use("iotb_sum", "l", path=(), direction="bwd")
    p.use("iotb_anti", "l")
    p.use("iotb_involutive", "l")
    p.use("iotb_involutive", "l")


# --------------------------------------------------------------------------- #
# booleans, naturals, successor
# --------------------------------------------------------------------------- #

@recipe("if_true", "em-convex", "@ifthenelse 0 (b:Nb) (c:Nb)", "(b:Nb)", topic="encodings")
def _(p):
    p.norm()


@recipe("if_false", "em-convex", "@ifthenelse 1 (b:Nb) (c:Nb)", "(c:Nb)", topic="encodings")
def _(p):
    p.beta()
    p.use("cvx_id", "l")


@recipe("succ_zero", "n-convex", "@succ 0", "1", topic="encodings")
def _(p):
    p.beta()
    p.use("field_add_zero_l", "l")


recipe("nat_zero_node", "emergent", "circ 0", "@bar0", topic="encodings")(_normal)
recipe("nat_one_node", "emergent", "circ 1", "@bar1", topic="encodings")(_normal)


@recipe("nat_two_node", "em-convex", "circ (@succ 1)", show(C.natural(2)), topic="encodings")
def _(p):
    _pointwise(p)
    p.beta()
    p.use("conv_sigb", "l")
    p.norm()


# --------------------------------------------------------------------------- #
# building, checking, writing
# --------------------------------------------------------------------------- #

def statements():
    """The lemma database: one statement per recipe."""
    return LemmaDB(Lemma(r.name, r.calculus, _t(r.lhs), _t(r.rhs),
                         tuple((h, _t(a), _t(b)) for h, a, b in r.hyps),
                         postulate=bool(r.postulate))
                   for r in RECIPES)


def verified_db():
    """The statements, marked verified where the bundled scripts replay."""
    from .kernel import check_all
    db = statements()
    for e in check_all(load_scripts(), db, oracle=False):
        if e.verdict in ("ok", "postulate"):
            db[e.name].verified = True
    return db


def topics() -> dict:
    return {r.name: r.topic for r in RECIPES}


def build_all(verbose=False):
    """Run the recipes in order; returns the scripts."""
    from .model import oracle_equal
    db = LemmaDB()
    out = []
    for r in RECIPES:
        if r.postulate:
            s = Script(r.name, r.calculus, _t(r.lhs), _t(r.rhs), postulate=r.postulate)
            if not oracle_equal(s.lhs, s.rhs, 100, 0):
                raise RuntimeError(f"{r.name}: the model oracle refutes the postulate")
            db.add(Lemma(r.name, r.calculus, s.lhs, s.rhs, verified=True, postulate=True))
            out.append(s)
            if verbose:
                print(f"{r.name}: postulate")
            continue
        p = ProofBuilder(r.name, r.calculus, r.lhs, r.rhs, db, r.hyps)
        r.fn(p)
        s = p.script()
        v = check_script(s, db)
        if not v.ok:
            raise RuntimeError(f"{r.name}: built script does not replay: {v.reason}")
        db.add(Lemma(r.name, r.calculus, s.lhs, s.rhs, s.hyps, verified=True))
        out.append(s)
        if verbose:
            print(f"{r.name}: {len(s.steps)} steps")
    return out


def load_scripts(directory=SCRIPT_DIR):
    return [script_from_text(p.read_text(encoding="utf-8"))
            for p in sorted(Path(directory).glob("*.emcx"))]


def write_scripts(directory=SCRIPT_DIR):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for old in directory.glob("*.emcx"):
        old.unlink()
    scripts = build_all()
    for s in scripts:
        (directory / f"{s.name}.emcx").write_text(script_to_text(s), encoding="utf-8")
    return scripts


if __name__ == "__main__":
    import sys
    scripts = write_scripts(sys.argv[1] if len(sys.argv) > 1 else SCRIPT_DIR)
    print(f"wrote {len(scripts)} scripts")
