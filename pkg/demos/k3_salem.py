"""A degree 22 Salem polynomial passing the test for K3-type lattice
automorphisms (signature (3,19)), next to a cyclotomic product that fails it.

Run: python demos/k3_salem.py
"""

from isowitt import cyclotomic, k3_check
from isowitt.gate import K3_SALEM_22
from isowitt.poly import roots_outside_unit_disk

S = K3_SALEM_22
print("polynomial (constant term first):", list(S.coeffs))
print("S(1) =", S(1), " S(-1) =", S(-1))
print("roots outside the unit disk:", roots_outside_unit_disk(S))
print("passes:", k3_check(S))

T = cyclotomic(23)
print("\nPhi_23 passes:", k3_check(T))
