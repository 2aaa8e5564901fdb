"""Splitting the one-point function into planted pieces.

Cut a cluster at the origin and it falls apart into planted clusters, each
attached to 0 by a single bond.  Reassembling ordered tuples of planted
clusters and correcting for overlaps gives an alternating expansion of g.

Run: python demos/02_one_point_expansion.py
"""
from lattice_expansion.onept import expansion, j_closed_form, j_terms

e = expansion("tree", 2, 6)

print("g        ", [str(c) for c in e.g])
print("exp(2d r)", [str(c) for c in e.Gamma0])
for i in (1, 2, 3):
    print(f"Gamma{i}   ", [str(c) for c in e.Gamma(i)])
print("remainder", [str(c) for c in e.Gamma4_tilde])

# The terms are driven by one combinatorial fact: when k pairs in a tuple
# overlap, the lexicographic expansion of prod(1 + V) contributes binomial
# amounts to each term.
pattern = 0b111  # three labels, every pair overlapping
jt = j_terms(3, pattern)
print("\nall three pairs overlapping:", (jt.J1, jt.J2_total, jt.J3_total, jt.J4), "=", j_closed_form(3))

# Every identity below holds coefficient by coefficient.
print()
for name, (lhs, rhs) in e.identities().items():
    print(f"{'ok ' if lhs == rhs else 'BAD'} {name}")
