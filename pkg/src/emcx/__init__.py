"""Rewriting, proof checking and an exact model for the dilation calculi."""

from .combinators import build, is_bin, natural
from .extension import em_step, ext, ext_c, is_finite, is_finite_c
from .kernel import Lemma, LemmaDB, check_all, check_script
from .model import eval_term, evaluate, oracle_equal
from .rewrite import apply_rule, normalize, prove_equal, rules_for
from .sexpr import Script, script_from_text, script_to_text
from .syntax import parse, parse_type, show
from .terms import (App, Arrow, Const, E, Lam, N, NB, Var, alpha_equal,
                    infer_type, substitute)

__all__ = [
    "App", "Arrow", "Const", "E", "Lam", "Lemma", "LemmaDB", "N", "NB", "Script", "Var",
    "alpha_equal", "apply_rule", "build", "check_all", "check_script", "em_step",
    "eval_term", "evaluate", "ext", "ext_c", "infer_type", "is_bin", "is_finite",
    "is_finite_c", "natural", "normalize", "oracle_equal", "parse", "parse_type",
    "prove_equal", "rules_for", "script_from_text", "script_to_text", "show",
    "substitute",
]
