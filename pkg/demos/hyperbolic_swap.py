"""Swapping the two basis vectors of the hyperbolic plane: the reduction mod 2
gives the zero class in the Witt group over F_2, yet neither rational isotropic
line is preserved by the swap, so the equivariant form over Q is not neutral.

Run: python demos/hyperbolic_swap.py
"""

from isowitt import QuadForm, boundary, is_neutral
from isowitt import linalg as la

swap = la.qmat([[0, 1], [1, 0]])
for scale in (1, 2):
    G = la.qmat([[0, scale], [scale, 0]])
    bc = boundary(QuadForm(G), swap, 2)
    print(f"scale {scale}: boundary class over F_2 has rank {bc.form.dim}, "
          f"neutral: {is_neutral(bc.form).neutral}")

# The only isotropic lines of xy are the two axes, and the swap exchanges them.
for v in ([1, 0], [0, 1]):
    w = swap @ la.qmat([[x] for x in v])
    print(f"line {v} -> {[int(x) for x in w.flat]}")
