"""
Counting A-partitions
=====================

Parts are drawn from a fixed set A. The count table is a coin-change
recurrence over big integers, and enumeration lists the partitions
themselves in decreasing lexicographic order.
"""

from apartitions import PartSet, count_table, enumerate_partitions, parse_set

# Sets come from a small grammar; the same strings are accepted by the CLI.
for spec in ["all", "mary:2", "power:2", "fib", "factorial", "explicit:1,2,5"]:
    ps = parse_set(spec)
    table = count_table(ps, 30)
    print(f"{spec:>16}: parts <= 30 {ps.parts_up_to(30)}")
    print(f"{'':>16}  p_A(0..15) = {list(table.counts[:16])}")

# Enumeration agrees with the counts.
squares = PartSet.power(2)
for lam in enumerate_partitions(squares, 9):
    print(lam)
print("p_A2(9) =", count_table(squares, 9)[9])

# Excluding the second element gives the restricted counts used by the induction.
restricted = squares.without(4)
print(restricted.spec, list(count_table(restricted, 12).counts))

# Big integers come for free.
print("p(1000) =", count_table(PartSet.all_integers(), 1000)[1000])
