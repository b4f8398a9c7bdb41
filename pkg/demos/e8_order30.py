"""A Coxeter element of E8: an isometry of order 30 of the positive definite
even unimodular lattice of rank 8, built from the cyclotomic polynomial
Phi_30 alone.

Run: python demos/e8_order30.py
"""

from isowitt import construct, cyclotomic
from isowitt import linalg as la

S = cyclotomic(30)
cert = construct(S, 8, 0)
A = cert.action

order, P = 1, A
while not (P == la.identity(8)).all():
    P, order = P @ A, order + 1

print("Gram matrix:")
for row in cert.gram:
    print("  " + " ".join(f"{int(x):3d}" for x in row))
print("determinant:", la.det(cert.gram))
print("order of the isometry:", order)
print("all checks passed:", cert.verified)
