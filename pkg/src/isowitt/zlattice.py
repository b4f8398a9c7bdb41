"""Lattices with an isometry inside a rational quadratic space: duals,
unimodularity, evenness and discriminant (torsion) forms via Smith normal form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg as la
from .exact import prime_divisors, valuation
from .qform import QuadForm


class NotIntegral(ValueError):
    pass


def _frac_mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


class GLattice:
    """Full-rank lattice spanned by the columns of ``basis`` in (V, b) with
    the isometry ``action`` of V (ambient coordinates)."""

    def __init__(self, ambient, basis=None, action=None, check: bool = True):
        self.ambient = ambient if isinstance(ambient, QuadForm) else QuadForm(ambient)
        n = self.ambient.dim
        B = la.identity(n) if basis is None else la.qmat(basis)
        if B.shape != (n, n) or (n and la.det(B) == 0):
            raise ValueError("basis must be an invertible n x n matrix")
        self.basis = la.lattice_basis(B) if n else B
        self.action = la.identity(n) if action is None else la.qmat(action)
        if check and n:
            G = self.ambient.gram
            if not (self.action.T @ G @ self.action == G).all():
                raise ValueError("action is not an isometry of the ambient form")

    @property
    def dim(self) -> int:
        return self.ambient.dim

    def gram(self) -> np.ndarray:
        return self.basis.T @ self.ambient.gram @ self.basis

    def action_in_basis(self) -> np.ndarray:
        return la.inverse(self.basis) @ self.action @ self.basis

    def is_stable(self) -> bool:
        M = self.action_in_basis()
        return la.is_integral(M) and abs(la.det(M)) == 1

    def with_basis(self, basis) -> "GLattice":
        return GLattice(self.ambient, basis, self.action, check=False)

    def contains(self, other: "GLattice") -> bool:
        return la.is_integral(la.inverse(self.basis) @ other.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, GLattice) and (self.basis == other.basis).all()

    def scaled(self, c) -> "GLattice":
        return self.with_basis(self.basis * Fraction(c))

    def __repr__(self) -> str:
        return f"GLattice(basis={la.to_lists(self.basis)})"


def dual(L: GLattice) -> GLattice:
    """The dual lattice {x : b(x, L) in Z}; basis G^-1 B^-T."""
    G = L.ambient.gram
    return L.with_basis(la.inverse(G) @ la.inverse(L.basis).T)


def lattice_sum(L: GLattice, M: GLattice) -> GLattice:
    return L.with_basis(la.lattice_basis(np.hstack([L.basis, M.basis])))


def lattice_intersection(L: GLattice, M: GLattice) -> GLattice:
    n = L.dim
    big = np.hstack([L.basis, -M.basis])
    d = la.common_denominator(big)
    K = la.integer_kernel(la.zmat(big * d))
    return L.with_basis(la.lattice_basis(L.basis @ K[:n, :]))


@dataclass(frozen=True)
class LatticeReport:
    integral: bool
    unimodular: bool
    even: bool
    almost_unimodular_at: tuple[int, ...]
    det: Fraction

    def to_json(self) -> dict:
        from .exact import format_rational

        return {
            "integral": self.integral,
            "unimodular": self.unimodular,
            "even": self.even,
            "almost_unimodular_at": list(self.almost_unimodular_at),
            "det": format_rational(self.det),
        }


def _p_integral(M: np.ndarray, p: int) -> bool:
    return all(Fraction(x).denominator % p for x in M.flat)


def is_almost_unimodular_at(L: GLattice, p: int) -> bool:
    """p L^dual is contained in L, which is contained in L^dual, at p."""
    M = L.gram()
    return _p_integral(M, p) and _p_integral(la.inverse(M) * p, p)


def lattice_report(L: GLattice) -> LatticeReport:
    M = L.gram()
    d = la.det(M)
    integral = la.is_integral(M)
    even = integral and all(M[i, i] % 2 == 0 for i in range(M.shape[0]))
    primes = set()
    for n in (d.numerator, d.denominator):
        if abs(n) > 1:
            primes.update(prime_divisors(n))
    au = tuple(p for p in sorted(primes) if is_almost_unimodular_at(L, p))
    return LatticeReport(integral, integral and abs(d) == 1, even, au, d)


# ----------------------------------------------------------- torsion forms


@dataclass
class TorsionForm:
    """Finite abelian group sum Z/d_i with a Q/Z-valued symmetric pairing and
    an action matrix (column j = image of generator j, entry i mod d_i).

    ``lifts`` holds ambient vectors representing the generators when the form
    comes from a lattice.
    """

    orders: list[int]
    pairing: np.ndarray  # Fractions in [0, 1)
    action: np.ndarray  # ints
    lifts: np.ndarray | None = None

    @property
    def rank(self) -> int:
        return len(self.orders)

    def size(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.orders) if self.orders else 1

    def pair(self, x, y) -> Fraction:
        s = Fraction(0)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        s += a * b * self.pairing[i, j]
        return _frac_mod1(s)

    def act(self, x) -> list[int]:
        out = []
        for i in range(self.rank):
            out.append(sum(int(self.action[i, j]) * int(x[j]) for j in range(self.rank)) % self.orders[i])
        return out

    def reduce(self, x) -> list[int]:
        return [int(a) % d for a, d in zip(x, self.orders)]

    def elements(self):
        from itertools import product

        return product(*[range(d) for d in self.orders])

    def is_nondegenerate(self) -> bool:
        return _radical_trivial(self)

    def action_preserves_pairing(self) -> bool:
        for i in range(self.rank):
            ei = [int(k == i) for k in range(self.rank)]
            for j in range(self.rank):
                ej = [int(k == j) for k in range(self.rank)]
                if self.pair(self.act(ei), self.act(ej)) != self.pair(ei, ej):
                    return False
        return True

    def to_json(self) -> dict:
        from .exact import format_rational

        return {
            "orders": list(self.orders),
            "pairing": [[format_rational(x) for x in row] for row in la.to_lists(self.pairing)]
            if self.rank else [],
            "action": [[int(x) for x in row] for row in self.action.tolist()] if self.rank else [],
        }


def _radical_trivial(T: TorsionForm) -> bool:
    """The homomorphism x -> b(x, -) from T to Hom(T, Q/Z) is injective.

    Writing b(x, e_j) = sum_i x_i P_ij mod 1, injectivity is checked on the
    integer matrix E P (E = exponent) via Smith normal form of the map
    Z^k -> (Z/E)^k combined with the relations d_i e_i.
    """
    k = T.rank
    if k == 0:
        return True
    E = T.exponent()
    P = la.zmat([[int(T.pairing[i, j] * E) for j in range(k)] for i in range(k)])
    # kernel of x -> x^T P mod E, restricted to x in prod Z/d_i:
    # x in Z^k with P^T x in E Z^k; compare the index of that sublattice with
    # the relation lattice diag(d_i).
    rel = np.hstack([P.T, la.zmat([[E * int(i == j) for j in range(k)] for i in range(k)])])
    K = la.integer_kernel(rel)[:k, :]
    sub = la.lattice_basis(la.qmat(K))
    # sublattice must equal diag(d) lattice
    D = la.qmat([[T.orders[i] * int(i == j) for j in range(k)] for i in range(k)])
    return (la.lattice_basis(D) == sub).all()


def _quotient(big: np.ndarray, small: np.ndarray, G: np.ndarray, action: np.ndarray,
              drop_trivial: bool = True) -> TorsionForm:
    """big/small for full-rank lattices small in big, with pairing from G."""
    C = la.inverse(big) @ small
    if not la.is_integral(C):
        raise NotIntegral("small lattice is not contained in big lattice")
    diag, U, V = smith(C)
    Uinv = la.inverse(la.qmat(U))
    gens = big @ Uinv
    A_big = la.inverse(big) @ action @ big
    act = la.qmat(U) @ A_big @ Uinv
    keep = [i for i, d in enumerate(diag) if not (drop_trivial and d == 1)]
    orders = [int(diag[i]) for i in keep]
    if keep and not la.is_integral(act[np.ix_(keep, keep)]):
        raise ValueError("action does not preserve the lattices")
    k = len(keep)
    pairing = np.empty((k, k), dtype=object)
    action_mod = np.empty((k, k), dtype=object)
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            pairing[a, b] = _frac_mod1(Fraction(gens[:, i] @ G @ gens[:, j]))
            action_mod[a, b] = int(act[i, j]) % orders[a]
    lifts = gens[:, keep] if k else np.zeros((big.shape[0], 0), dtype=object)
    return TorsionForm(orders, pairing, action_mod, lifts)


def smith(C):
    return la.smith(la.zmat(C))


def discriminant_form(L: GLattice) -> TorsionForm:
    if not la.is_integral(L.gram()):
        raise NotIntegral("discriminant form needs an integral lattice")
    D = dual(L)
    return _quotient(D.basis, L.basis, L.ambient.gram, L.action)


def p_part(T: TorsionForm, p: int) -> TorsionForm:
    idx, mults, orders = [], [], []
    for i, d in enumerate(T.orders):
        a = valuation(d, p)
        if a:
            idx.append(i)
            orders.append(p ** a)
            mults.append(d // p ** a)
    k = len(idx)
    pairing = np.empty((k, k), dtype=object)
    action = np.empty((k, k), dtype=object)
    for a, i in enumerate(idx):
        inv = pow(mults[a], -1, orders[a])
        for b, j in enumerate(idx):
            pairing[a, b] = _frac_mod1(mults[a] * mults[b] * T.pairing[i, j])
            action[a, b] = mults[b] * int(T.action[i, j]) * inv % orders[a]
    lifts = None
    if T.lifts is not None:
        lifts = T.lifts[:, idx] * np.array(mults, dtype=object) if k else T.lifts[:, :0]
    return TorsionForm(orders, pairing, action, lifts)


def local_discriminant_form(L: GLattice, p: int) -> TorsionForm:
    """p-part of L^dual / L, for L integral at p (other primes ignored)."""
    M = L.gram()
    if not _p_integral(M, p):
        raise NotIntegral(f"lattice is not integral at {p}")
    c = 1
    for x in M.flat:
        den = Fraction(x).denominator
        c = math.lcm(c, den)
    # c is prime to p; scaling the form by c keeps the dual at p
    if c == 1:
        return p_part(discriminant_form(L), p)
    scaled = GLattice(QuadForm(L.ambient.gram * c), L.basis, L.action, check=False)
    T = p_part(discriminant_form(scaled), p)
    for i in range(T.rank):
        for j in range(T.rank):
            q = T.pairing[i, j]
            mod = q.denominator
            T.pairing[i, j] = _frac_mod1(Fraction(q.numerator * pow(c, -1, mod), mod)) if mod > 1 else Fraction(0)
    return T
