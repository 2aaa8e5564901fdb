"""Bounds that replace cluster sums by random-walk convolutions.

Run: python demos/05_two_point_bounds.py
"""
from lattice_expansion import generating as gen
from lattice_expansion.lattice import l1

# Return probabilities of simple random walk; the bound (2m - 1)!! on the
# scaled return weight is what keeps the expansion under control.
for d in (2, 4, 6):
    print(f"d={d}:", [str(gen.closed_walk_return(d, m)) for m in (1, 2, 3)])

# G^(i) counts clusters whose 0-x distance is at least i.  Dropping the
# avoidance constraint bounds it by a walk of i steps followed by a cluster.
for i in (1, 2, 3):
    chk = gen.gk_bound("tree", 2, 5, i)
    print(f"G^({i}) bound holds for trees: {chk.holds}")

# Pairs of intersecting clusters are bounded by S^(|x|, 2).
q = gen.Q("tree", 2, 5)
worst = max(q.support(), key=lambda x: q[x][5])
print("\nQ(s):", [str(c) for c in q[(1, 0)]])
print("largest [z^5]Q at", worst, "=", q[worst][5], "<=", gen.S_mn("tree", 2, 5, l1(worst), 2)[worst][5])
