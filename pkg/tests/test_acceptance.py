"""The eight acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (visible with ``pytest -s``
or when the file is run directly: ``python tests/test_acceptance.py``).
"""

import io
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from emcx import combinators as C
from emcx import corpus
from emcx.cli import run
from emcx.gen import random_term
from emcx.model import evaluate, oracle_equal, sample_rational
from emcx.rewrite import prove_equal, rules_for, successors
from emcx.syntax import parse
from emcx.terms import infer_type, is_subtype

# lemma groups the corpus must cover, by subject
REQUIRED = {
    "node group laws": ["grp_inv_inv", "grp_inv_one", "grp_mul_inv", "grp_assoc"],
    "N-irq laws": ["nirq_R1", "nirq_R2", "nirq_unit", "nirq_inverse", "nirq_compose"],
    "products with zero and dilations": ["mul_zero_left", "mul_circ_zero", "mul_circ_circ"],
    "differences": ["diff_self", "diff_self_not_dilation", "diff_zero", "diff_one",
                    "diff_from_one", "diff_diff"],
    "approximate operations": ["asum_adif_l", "asum_adif_r", "adif_from_asum", "asum_assoc",
                               "ainv_involutive", "asum_neutral_l", "asum_distrib",
                               "ainv_commutes"],
    "emergent group": ["sigb_assoc", "sigb_neutral_l", "sigb_neutral_r", "sigb_inverse_l",
                       "sigb_inverse_r", "scal_morph_sum", "scal_morph_inv", "scal_action"],
    "BIN closure": ["bin_diff"],
    "new dilations": ["bin_newdil", "newdil_fixes_dilation", "newdil_one", "newdil_compose"],
    "powers of naturals": [f"natural_power_{n}" for n in range(7)],
    "convex calculus laws": ["cvx_id", "cvx_act", "cvx_R1", "cvx_R2", "dot_comm_nb"],
    "products through convexity": ["mul_diff", "cvx_zero_base"],
    "nodes acting on edges": ["conv_delb", "conv_sigb", "conv_jb", "conv_neg_one"],
    "field of extended nodes": ["field_add_assoc", "field_add_comm", "field_add_zero_l",
                                "field_add_neg", "field_mul_comm", "field_mul_assoc",
                                "field_mul_one", "field_mul_inv", "field_distrib"],
    "barycentric condition": ["bary", "bary_diff"],
    "commutative edge sum": ["oplus_comm"],
    "encodings": ["if_true", "if_false", "succ_zero", "nat_two_node"],
}

LINES = []


def report(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}" + (f": {detail}" if detail else "")
    LINES.append(line)
    print(line, file=sys.__stdout__, flush=True)
    return ok


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue()


def criterion_corpus_replay():
    start = time.perf_counter()
    code, out = _cli("check", "--json")
    elapsed = time.perf_counter() - start
    data = json.loads(out)
    names = {e["name"] for e in data["entries"] if e["verdict"] in ("ok", "postulate")}
    missing = sorted(n for group in REQUIRED.values() for n in group if n not in names)
    ok = code == 0 and data["ok"] and not missing and elapsed < 60
    posts = sorted(e["name"] for e in data["entries"] if e["verdict"] == "postulate")
    return report(1, "corpus replay", ok,
                  f"exit {code}, {len(data['entries'])} scripts in {elapsed:.1f} s, "
                  f"postulated {posts}, missing {missing}")


def criterion_oracle_bridge():
    failures = []
    db = corpus.statements()
    for lem in db:
        r = oracle_equal(lem.lhs, lem.rhs, 100, 0, hypotheses=[(l, r) for _, l, r in lem.hyps])
        if not r:
            failures.append(lem.name)
    return report(2, "model soundness bridge", not failures,
                  f"{len(db)} lemmas, {len(failures)} failures {failures or ''}".strip())


def criterion_separation():
    bar0, bar1 = C.build("bar0"), C.build("bar1")
    found = prove_equal(bar0, bar1, "emergent", 50000)
    r = oracle_equal(bar0, bar1, 100, 0)
    ce = r.counterexample or {}
    distinct = ce.get("#0") != ce.get("#1")
    ok = found is None and not r and r.trials == 1 and distinct
    return report(3, "separation of bar0 and bar1", ok,
                  f"search found {'a proof' if found else 'nothing'}; oracle refutes on "
                  f"trial {r.trials} with e={ce.get('#0')}, x={ce.get('#1')}")


AXIOMS = {
    "R1": ("circ a e e", "e"),
    "R2": ("circ a e (bullet a e x)", "x"),
    "R2'": ("bullet a e (circ a e x)", "x"),
    "unit": ("circ 1 e x", "x"),
    "inverse": ("circ (star a) e x", "bullet a e x"),
    "composition": ("circ a e (circ b e x)", "circ (dot a b) e x"),
}


def criterion_irq_axioms():
    bad = [n for n, (l, r) in AXIOMS.items() if not oracle_equal(parse(l), parse(r), 100, 0)]
    # the same identities on explicit random instances
    rng = random.Random(0)
    env_terms = {n: (parse(l), parse(r)) for n, (l, r) in AXIOMS.items()}
    for _ in range(100):
        env = {"a": sample_rational(rng, True), "b": sample_rational(rng, True),
               "e": (sample_rational(rng),), "x": (sample_rational(rng),)}
        for n, (l, r) in env_terms.items():
            if evaluate(l, env) != evaluate(r, env) and n not in bad:
                bad.append(n)
    return report(4, "irq and N-irq axioms in the model", not bad,
                  f"{len(AXIOMS)} identities x 100 instances, failing {bad}")


def criterion_naturals():
    rng = random.Random(0)
    bad = []
    for n in range(9):
        v = evaluate(C.natural(n), {})
        for _ in range(20):
            e, x = sample_rational(rng), sample_rational(rng)
            if v((e,))((x,)) != (e + n * (x - e),):
                bad.append(n)
                break
    return report(5, "naturals law n e x = e + n(x - e)", not bad,
                  f"n = 0..8, 20 pairs each, failing {bad}")


FIELD = {
    "+ commutative": ("sigB 0 u v", "sigB 0 v u"),
    "+ associative": ("sigB 0 (sigB 0 u v) w", "sigB 0 u (sigB 0 v w)"),
    "0 neutral": ("sigB 0 0 u", "u"),
    "additive inverse": ("sigB 0 u (jB 0 u)", "0"),
    "product through convexity": ("cvx u 0 v", "dot v u"),
    "* commutative": ("dot u v", "dot v u"),
    "* associative": ("dot (dot u v) w", "dot u (dot v w)"),
    "1 neutral": ("dot 1 u", "u"),
    "distributive": ("dot w (sigB 0 u v)", "sigB 0 (dot w u) (dot w v)"),
    "multiplicative inverse": ("dot a (star a)", "1"),
}


def _nb(text):
    import re
    return re.sub(r"\b([uvw])\b", r"(\1:Nb)", text)


def criterion_field_laws():
    rng = random.Random(0)
    terms = {n: (parse(_nb(l)), parse(_nb(r))) for n, (l, r) in FIELD.items()}
    bad = set()
    for _ in range(100):
        env = {"u": sample_rational(rng), "v": sample_rational(rng),
               "w": sample_rational(rng), "a": sample_rational(rng, True)}
        for n, (l, r) in terms.items():
            if evaluate(l, env) != evaluate(r, env):
                bad.add(n)
    return report(6, "field laws of extended nodes in the model", not bad,
                  f"{len(FIELD)} laws x 100 samples, failing {sorted(bad)}")


def criterion_type_preservation():
    violations, steps = 0, 0
    calcs = ["base-em", "emergent", "em-convex", "n-convex"]
    for i in range(1000):
        calc = calcs[i % 4]
        t = random_term(i, calc)
        ty = infer_type(t)
        for rule, path, direction, new in successors(t, rules_for(calc).all_rules()):
            steps += 1
            if not is_subtype(infer_type(new), ty):
                violations += 1
    return report(7, "type preservation", violations == 0 and steps > 1000,
                  f"1000 terms, {steps} single steps, {violations} violations")


def criterion_determinism():
    env = dict(os.environ, EMCX_SEED="0")
    outs = []
    for _ in range(2):
        blob = b""
        for cmd in (["check", "--json"], ["lemmas", "--json"]):
            p = subprocess.run([sys.executable, "-m", "emcx", *cmd], capture_output=True, env=env)
            blob += p.stdout + str(p.returncode).encode()
        outs.append(blob)
    return report(8, "deterministic --json reports", outs[0] == outs[1] and len(outs[0]) > 1000,
                  f"{len(outs[0])} bytes, identical={outs[0] == outs[1]}")


CRITERIA = [criterion_corpus_replay, criterion_oracle_bridge, criterion_separation,
            criterion_irq_axioms, criterion_naturals, criterion_field_laws,
            criterion_type_preservation, criterion_determinism]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[c.__name__ for c in CRITERIA])
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
