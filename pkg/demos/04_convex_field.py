"""The convexity axiom, the field of extended nodes and commutativity.

Three statements are taken as oracle-checked postulates; the report shows
which derived lemmas rest on them.
"""

from emcx import corpus, show
from emcx.kernel import check_all

report = {e.name: e for e in check_all(corpus.load_scripts(), corpus.statements())}
db = corpus.statements()

print("field laws:")
for name in ["field_add_comm", "field_add_assoc", "field_add_neg", "field_mul_comm",
             "field_mul_inv", "field_distrib"]:
    lem, e = db[name], report[name]
    print(f"  {show(lem.lhs)}  =  {show(lem.rhs)}   {e.verdict}, {e.steps} steps")

print("\npostulates (accepted on the model oracle):")
for e in report.values():
    if e.verdict == "postulate":
        print(f"  {e.name}: {show(db[e.name].lhs)}  =  {show(db[e.name].rhs)}")

print("\nlemmas resting on them:")
for e in report.values():
    if e.relies:
        print(f"  {e.name:18} relies on {', '.join(e.relies)}")

lem = db["oplus_comm"]
print("\ncommutativity of the edge sum:", show(lem.lhs), "=", show(lem.rhs))
