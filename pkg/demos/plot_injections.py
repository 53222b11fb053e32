"""
The injection behind the induction step
=======================================

Partitions of w+z without a_2 parts are sent injectively to pairs
(partition of w without a_2, partition of z). Seven cases cover every input.
The variant g adds one branch so that squares and Fibonacci numbers work too.
"""

from collections import Counter

from apartitions.core import Partition, PartSet, iter_partitions
from apartitions.injections import f_apply, g_apply, legal_pairs, verify_injection

A = PartSet.explicit([1, 2, 5])
for lam in iter_partitions(A.without(2), 10):
    img = f_apply(A, lam, 6, 4)
    print(f"{str(lam):>12} -> {img}   case {img.case_id}")

# The special branch of g.
print(g_apply(PartSet.power(2), Partition((16,) + (1,) * 13), 17, 12))

# Exhaustive verification over every legal (w, z).
for ps, variant in [(PartSet.mary(2), "f"), (PartSet.power(2), "g"), (PartSet.fibonacci(), "g")]:
    cases, checked = Counter(), 0
    for w, z in legal_pairs(ps, 36, variant):
        rep = verify_injection(ps, w, z, variant)
        assert rep.passed
        cases.update(rep.case_histogram)
        checked += 1
    print(f"{ps.spec:>8} ({variant}): {checked} pairs verified, cases {dict(sorted(cases.items(), key=str))}")
