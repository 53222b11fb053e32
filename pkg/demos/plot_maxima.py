"""
Maximising the extended partition function
==========================================

The extended value of an A-partition is the product of p_A over its parts.
Its maximum over partitions of n has a closed form for each built-in family.
"""

from apartitions.core import PartSet, count_table, max_value
from apartitions.families import FamilySpec, max_formula_check

for fam in [FamilySpec("mary", 2), FamilySpec("power", 2), FamilySpec("fib"), FamilySpec("factorial")]:
    ps = fam.partset()
    table = count_table(ps, 40)
    print(f"-- {ps.spec}")
    for n in (9, 13, 20, 40):
        res = max_value(ps, n, table)
        verdict = max_formula_check(fam, n, res)
        shown = ", ".join(str(w) for w in res.witnesses[:4]) + (" ..." if len(res.witnesses) > 4 else "")
        print(f"   n={n:2d}  max={res.value:<8} {verdict.status:<5} {shown}")

# For ordinary partitions the pattern of 4s, 5s and 6s is reported, not graded.
fam = FamilySpec("all")
res = max_value(PartSet.all_integers(), 23)
print(max_formula_check(fam, 23, res).to_dict())
