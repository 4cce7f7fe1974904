"""Terms, types, normal forms and the affine model.

Run: python demos/01_terms_and_model.py
"""

from emcx import combinators as C
from emcx import evaluate, infer_type, normalize, oracle_equal, parse, show
from emcx.dot import to_dot
from fractions import Fraction

t = parse("circ a e (bullet a e (circ 1 e x))")
print("term      ", show(t))
print("type      ", infer_type(t))
print("normal    ", show(normalize(t, "base-em").term))

# a dilation of coefficient a based at e sends x to e + a (x - e)
env = {"a": Fraction(2), "e": (Fraction(1),), "x": (Fraction(3),)}
print("circ 2 1 3 =", evaluate(parse("circ a e x"), env)[0])

# zero is only available after extension; circ 0 collapses to the constant map
print("circ 0    ", show(normalize(parse("circ 0"), "emergent").term))

# the two constant-like edge maps are separated by the model
r = oracle_equal(C.build("bar0"), C.build("bar1"))
print("bar0 = bar1 in the model?", bool(r), "counterexample", r.counterexample)

# numbers: natural(n) e x = e + n (x - e)
for n in range(5):
    v = evaluate(C.natural(n), {})((Fraction(0),))((Fraction(1),))
    print(f"natural({n}) 0 1 = {v[0]}")

print(to_dot(parse("\\x:E. circ a x y")))
