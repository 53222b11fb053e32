"""
Exceptions and thresholds for m-ary partitions
==============================================

For b_m the inequality b_m(w) b_m(z) > b_m(w+z) fails only at a handful of
pairs once three lemma regions are set aside. This script rebuilds the list
of remaining exceptions and the threshold beyond which none occur.
"""

from apartitions.bo import find_threshold, mary_exception_table
from apartitions.core import PartSet
from apartitions.families import mary_scan_bound

for m in (2, 3, 4):
    rep = mary_exception_table(m)
    cells = [f"({e.w},{e.z}){'=' if e.equality else ''}" for e in rep.exceptions]
    print(f"m={m}  scanned w+z <= {rep.sum_max}:  {' '.join(cells)}")
    # The lemma audit should come back clean.
    assert not rep.lemma_contradictions and not rep.equality_audit

# Thresholds, with the pair that makes each one tight.
for m in range(2, 11):
    res = find_threshold(PartSet.mary(m), m, mary_scan_bound(m))
    print(f"m={m:2d}  n_m={res.threshold:3d}  tight at ({res.witness.w},{res.witness.z})")
