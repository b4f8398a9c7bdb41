"""Non-degenerate rational symmetric bilinear forms and their local invariants.

Hasse-Witt convention: on a diagonalization <d_1, ..., d_n>,
eps_v = prod_{i<j} (d_i, d_j)_v. With this convention
eps(f + g) = eps(f) eps(g) (det f, det g)_v.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg as la
from .exact import (
    REAL,
    Place,
    as_fraction,
    hilbert_symbol,
    prime_divisors,
    same_local_class,
    square_class,
)


class DegenerateForm(ValueError):
    pass


@dataclass(frozen=True)
class FormInvariants:
    dim: int
    det: int
    disc: int
    signature: tuple[int, int]
    hasse: dict  # Place -> +-1, listing the real place and every relevant prime

    def hasse_at(self, v: Place) -> int:
        return self.hasse.get(v, 1)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "det": self.det,
            "disc": self.disc,
            "signature": list(self.signature),
            "hasse": {str(v): e for v, e in sorted(self.hasse.items(), key=_place_key)},
        }


def _place_key(item):
    v = item[0]
    return -1 if v.is_real else v.p


class QuadForm:
    """Symmetric non-degenerate rational Gram matrix; invariants are cached."""

    def __init__(self, gram):
        G = la.qmat(gram)
        if G.shape[0] != G.shape[1] or not la.is_symmetric(G):
            raise ValueError("Gram matrix must be square and symmetric")
        if G.shape[0] and la.det(G) == 0:
            raise DegenerateForm("Gram matrix is degenerate")
        self.gram = G
        self._diag: list[Fraction] | None = None
        self._inv: FormInvariants | None = None

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def diagonal(self) -> list[Fraction]:
        if self._diag is None:
            self._diag = diagonalize(self.gram)
        return self._diag

    def invariants(self) -> FormInvariants:
        if self._inv is None:
            self._inv = invariants(self)
        return self._inv

    def __repr__(self) -> str:
        return f"QuadForm({la.to_lists(self.gram)})"


def diagonalize(G) -> list[Fraction]:
    """Diagonal entries of a form congruent to G (symmetric Gaussian elimination)."""
    A = [[as_fraction(x) for x in row] for row in la.to_lists(la.qmat(G))]
    n = len(A)
    out = []
    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    raise DegenerateForm("form is degenerate")
                # e_k <- e_k + e_j makes the pivot 2 A[k][j] != 0
                for c in range(n):
                    A[k][c] += A[j][c]
                for r in range(n):
                    A[r][k] += A[r][j]
        piv = A[k][k]
        for i in range(k + 1, n):
            c = A[i][k] / piv
            if c:
                for t in range(n):
                    A[i][t] -= c * A[k][t]
                for t in range(n):
                    A[t][i] -= c * A[t][k]
        out.append(piv)
    return out


def hasse_of_diagonal(d: list[Fraction], v: Place) -> int:
    e = 1
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            e *= hilbert_symbol(d[i], d[j], v)
    return e


def _relevant_primes(d: list[Fraction]) -> list[int]:
    ps = {2}
    for x in d:
        for n in (x.numerator, x.denominator):
            if abs(n) > 1:
                ps.update(prime_divisors(n))
    return sorted(ps)


def invariants(f) -> FormInvariants:
    if not isinstance(f, QuadForm):
        f = QuadForm(f)
    d = f.diagonal()
    n = len(d)
    det = Fraction(1)
    for x in d:
        det *= x
    s = sum(1 for x in d if x < 0)
    hasse = {REAL: hasse_of_diagonal(d, REAL)}
    for p in _relevant_primes(d):
        hasse[Place(p)] = hasse_of_diagonal(d, Place(p))
    det_c = square_class(det) if n else 1
    disc_c = square_class((-1) ** (n * (n - 1) // 2) * det) if n else 1
    return FormInvariants(n, det_c, disc_c, (n - s, s), hasse)


def hasse(f, v: Place) -> int:
    if not isinstance(f, QuadForm):
        f = QuadForm(f)
    return hasse_of_diagonal(f.diagonal(), v)


def locally_equivalent(f, g, v: Place) -> bool:
    f = f if isinstance(f, QuadForm) else QuadForm(f)
    g = g if isinstance(g, QuadForm) else QuadForm(g)
    if f.dim != g.dim:
        return False
    df, dg = f.diagonal(), g.diagonal()
    if v.is_real:
        return sum(x < 0 for x in df) == sum(x < 0 for x in dg)
    pf = Fraction(1)
    for x in df:
        pf *= x
    pg = Fraction(1)
    for x in dg:
        pg *= x
    if f.dim == 0:
        return True
    return same_local_class(pf, pg, v) and hasse_of_diagonal(df, v) == hasse_of_diagonal(dg, v)


def direct_sum(*forms) -> QuadForm:
    grams = [(f.gram if isinstance(f, QuadForm) else la.qmat(f)) for f in forms]
    return QuadForm(la.block_diag(*grams))


def hyperbolic(n: int = 1) -> QuadForm:
    H = la.qmat([[0, 1], [1, 0]])
    return QuadForm(la.block_diag(*([H] * n))) if n else QuadForm(np.zeros((0, 0), dtype=object))


def n_plane() -> QuadForm:
    """The even binary form of determinant 3."""
    return QuadForm([[2, -1], [-1, 2]])


def e8_gram(sign: int = 1) -> np.ndarray:
    """Cartan matrix of E8 (Bourbaki labelling), scaled by sign."""
    edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]
    G = [[0] * 8 for _ in range(8)]
    for i in range(8):
        G[i][i] = 2
    for i, j in edges:
        G[i][j] = G[j][i] = -1
    return la.qmat([[sign * x for x in row] for row in G])


def standard_even_unimodular(r: int, s: int) -> np.ndarray:
    """Gram of an even unimodular lattice of signature (r, s), r = s mod 8.

    Definite blocks are E8 or E8(-1); the rest is hyperbolic planes.
    """
    if (r - s) % 8:
        raise ValueError("even unimodular lattices need r = s mod 8")
    if min(r, s) == 0 and (r + s) % 8:
        raise ValueError("definite even unimodular lattices have rank divisible by 8")
    blocks = []
    if r >= s:
        blocks += [e8_gram(1)] * ((r - s) // 8)
        blocks += [la.qmat([[0, 1], [1, 0]])] * s
    else:
        blocks += [e8_gram(-1)] * ((s - r) // 8)
        blocks += [la.qmat([[0, 1], [1, 0]])] * r
    return la.block_diag(*blocks)
