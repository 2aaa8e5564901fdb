"""Counting lattice trees and bond animals, and reading the counts as polynomials in d.

Run: python demos/01_counting_clusters.py
"""
from lattice_expansion.clusters import OriginInCycle, count, enumerate_clusters
from lattice_expansion.polyd import count_polynomials

# Every cluster is grown from the origin one bond at a time.  Trees forbid
# closing a cycle; animals allow it.
for d in (1, 2, 3):
    t = count("tree", d, 5).counts
    a = count("animal", d, 5).counts
    print(f"d={d}  trees   {t}")
    print(f"      animals {a}")

# The two models first differ at four bonds, by the unit squares through 0.
squares = enumerate_clusters("animal", 2, 4, (OriginInCycle(),))
print("\ncyclic 4-bond animals through 0 in the plane:")
for c in squares:
    print("  ", c.bonds)

# A cluster with n bonds spans at most n coordinate directions, so its count
# is a polynomial in d of degree n.  We build those polynomials from counts in
# Z^k that use all k directions.
print("\ncounts as polynomials in d:")
trees = count_polynomials("tree", 4)
animals = count_polynomials("animal", 4)
for n, (p, q) in enumerate(zip(trees, animals)):
    print(f"  t_{n}(d) = {p}")
    if p != q:
        print(f"  a_{n}(d) - t_{n}(d) = {q - p}")

# The polynomial form reaches dimensions we never enumerate directly.
print("\nt_4 in d = 10:", trees[4](10))
