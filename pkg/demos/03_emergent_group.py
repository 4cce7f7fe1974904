"""From approximate operations to the emergent group of edges.

The approximate sum Sig a is associative up to a moved base point.  The
identity is finite, so (em) extends it to a : Nb; applying 0 and
normalizing gives exact associativity of SigB.
"""

from emcx import App, Const, corpus, em_step, normalize, show

db = corpus.statements()
fin = db["asum_assoc"]
print("finite  :", show(fin.lhs), " = ", show(fin.rhs))

l2, r2 = em_step(fin.lhs, fin.rhs)
print("extended:", show(l2))
for side in (l2, r2):
    print("at 0    :", show(normalize(App(side, Const("0")), "emergent").term))

print()
print("the group lemmas of the corpus and how they were obtained:")
scripts = {s.name: s for s in corpus.load_scripts()}
for name in ["sigb_assoc", "sigb_neutral_l", "sigb_inverse_l", "scal_morph_sum", "scal_action"]:
    s = scripts[name]
    kinds = sorted({type(st).__name__ for st in s.steps})
    print(f"  {name:16} {show(s.lhs)}  =  {show(s.rhs)}    [{', '.join(kinds)}]")
