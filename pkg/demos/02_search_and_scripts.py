"""Proof search, replayable scripts and the kernel.

A proof found by search is only a candidate; it is written out as a script
and replayed by the kernel, which is the only trusted component.
"""

from emcx import corpus, parse, prove_equal, script_from_text, script_to_text
from emcx.kernel import check_script, replay_proof
from emcx.sexpr import Script

db = corpus.verified_db()

lhs = parse("circ a e (bullet a e (circ b e x))")
rhs = parse("circ b e x")
proof = prove_equal(lhs, rhs, "base-em")
print(f"found {len(proof.steps)} steps; replay:", replay_proof(proof, "base-em").ok)

text = script_to_text(Script("cancel", "base-em", lhs, rhs, proof.steps))
print(text)
again = script_from_text(text)
print("round trip exact:", script_to_text(again) == text)
print("kernel verdict:", check_script(again, db).ok)

# a bundled script: associativity of the node product via injectivity of circ
s = {x.name: x for x in corpus.load_scripts()}["grp_assoc"]
print(script_to_text(s))
print("replays:", check_script(s, db))
