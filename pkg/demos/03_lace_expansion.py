"""From the two-point function to Pi, and back again through laces.

Run: python demos/03_lace_expansion.py
"""
from lattice_expansion import lace

d, N = 2, 6

# Pi is defined implicitly by a convolution identity.  Solving it one order
# at a time leaves no residual at any site.
sol = lace.pi_solve("tree", d, N)
print("Pi-hat from the identity:", [str(c) for c in sol.Pi_hat])
print("residual vanishes:", sol.residual_zero)

# The same coefficients come out of explicit backbone-and-rib configurations,
# weighted by laces.  One-edge laces need the first and last ribs to meet.
p1 = lace.pi1("tree", d, N).total()
p2 = lace.pi2("tree", d, N).total()
print("Pi-hat(1):", [str(c) for c in p1])
print("Pi-hat(2):", [str(c) for c in p2])

# A three-edge lace cannot appear before the order found by the scan, so the
# truncated alternating sum is exact up to there.
scan = lace.order_scan("tree", d, 3, 5)
upto = scan.absent_through()
alt = (p2 - p1).truncate(upto)
print(f"\nno 3-edge lace through z^{upto}; alternating sum {[str(c) for c in alt]}")
print("matches:", alt == sol.Pi_hat.truncate(upto))

for L in lace.laces2(3):
    print("lace", sorted(L), "compatible", sorted(lace.compatible(L, 3)))
