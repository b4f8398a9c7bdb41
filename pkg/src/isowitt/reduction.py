"""Reduction of bounded forms with an isometry at a prime p: almost unimodular
stable lattices, the boundary class in the Witt group over F_p, and stable
lattices unimodular at p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg as la
from .equiwitt import FqForm, WittVerdict, is_neutral
from .exact import valuation
from .qform import QuadForm
from .zlattice import GLattice, TorsionForm, _p_integral, local_discriminant_form


class Unbounded(ValueError):
    """The action preserves no lattice."""


@dataclass
class BoundaryClass:
    prime: int
    form: FqForm
    lattice: GLattice  # the almost unimodular lattice it was read from
    torsion: TorsionForm  # p-part of its discriminant form (exponent p)

    def to_json(self) -> dict:
        return {"prime": self.prime, "form": self.form.to_json(),
                "lattice_basis": [[str(x) for x in row] for row in la.to_lists(self.lattice.basis)]}


def _ambient(V) -> QuadForm:
    return V if isinstance(V, QuadForm) else QuadForm(V)


def initial_lattice(V, A) -> GLattice:
    """The Z[A]-span of the standard basis (A must have integral char poly)."""
    V = _ambient(V)
    A = la.qmat(A)
    n = V.dim
    chi = la.charpoly(A)
    if any(Fraction(c).denominator != 1 for c in chi):
        raise Unbounded("characteristic polynomial of the action is not integral")
    if abs(chi[0]) != 1:
        raise Unbounded("the action is not invertible over Z")
    gens = []
    P = la.identity(n)
    for _ in range(n):
        gens.append(P)
        P = A @ P
    basis = la.lattice_basis(np.hstack(gens))
    return GLattice(V, basis, A)


def _scale_to_p_integral(L: GLattice, p: int) -> GLattice:
    M = L.gram()
    worst = min((valuation(x, p) for x in M.flat if x != 0), default=0)
    if worst >= 0:
        return L
    k = (-worst + 1) // 2
    return L.scaled(Fraction(p) ** k)


def almost_unimodular(L: GLattice, p: int) -> GLattice:
    """A stable lattice with p L^dual in L in L^dual at p; unchanged away from p
    apart from the initial rescaling by a power of p."""
    L = _scale_to_p_integral(L, p)
    while True:
        T = local_discriminant_form(L, p)
        if T.rank == 0:
            return L
        t = valuation(T.exponent(), p)
        if t <= 1:
            return L
        # U = p^(t-1) (L^dual / L)_p is isotropic and stable; pass to its preimage
        U = T.lifts * Fraction(p ** (t - 1))
        L = L.with_basis(la.lattice_basis(np.hstack([L.basis, U])))


def _fq_from_torsion(T: TorsionForm, p: int) -> FqForm:
    if any(d != p for d in T.orders):
        raise ValueError("torsion form does not have exponent p")
    k = T.rank
    G = [[int(T.pairing[i, j] * p) % p for j in range(k)] for i in range(k)]
    A = [[int(T.action[i, j]) % p for j in range(k)] for i in range(k)]
    return FqForm(p, G, A)


def boundary(V, A, p: int, start: GLattice | None = None) -> BoundaryClass:
    L0 = initial_lattice(V, A) if start is None else start
    if start is not None and not start.is_stable():
        raise ValueError("starting lattice is not stable")
    L = almost_unimodular(L0, p)
    T = local_discriminant_form(L, p)
    return BoundaryClass(p, _fq_from_torsion(T, p), L, T)


def unimodular_witness(V, A, p: int, budget: int | None = None, threads: int = 1,
                       start: GLattice | None = None) -> GLattice | None:
    """A stable lattice unimodular at p, or None when none exists."""
    bc = boundary(V, A, p, start)
    verdict: WittVerdict = is_neutral(bc.form, budget, threads)
    if not verdict.neutral:
        return None
    L = bc.lattice
    if not verdict.lagrangian:
        return L
    X = la.qmat([[int(x) for x in v] for v in verdict.lagrangian]).T
    lifts = bc.torsion.lifts @ X
    return L.with_basis(la.lattice_basis(np.hstack([L.basis, lifts])))


def is_unimodular_at(L: GLattice, p: int) -> bool:
    M = L.gram()
    return _p_integral(M, p) and valuation(la.det(M), p) == 0
