"""Lehmer's polynomial as the characteristic polynomial of an isometry of an
even unimodular lattice of rank 10.

Run: python demos/lehmer_e10.py
"""

from isowitt import LEHMER, check_conditions, construct, signature_targets

print("Lehmer polynomial (constant term first):", list(LEHMER.coeffs))
print("S(1) =", LEHMER(1), " S(-1) =", LEHMER(-1))

for r, s in sorted(signature_targets(LEHMER)):
    rep = check_conditions(LEHMER, r, s)
    print(f"signature ({r},{s}): necessary conditions {'hold' if rep.verdict else 'fail'}")

cert = construct(LEHMER, 1, 9)
print("\nGram matrix of a lattice of signature (1,9):")
for row in cert.gram:
    print("  " + " ".join(f"{int(x):4d}" for x in row))
for name, ok in cert.transcript:
    print(f"  {name:20s} {'ok' if ok else 'FAILED'}")
