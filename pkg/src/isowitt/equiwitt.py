"""Witt classes of symmetric bilinear forms over F_p carrying an isometry.

Neutrality is decided by Witt cancellation: if S is a nonzero isometry-stable
totally isotropic subspace then V is neutral exactly when S^perp/S is. Any
stable lagrangian contains a simple stable subspace, and simple stable
subspaces live in the kernels of f(A) for irreducible f, so searching those
kernels for one isotropic simple subspace is enough at each step.
"""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from . import fpmat as fm
from . import gfpoly
from . import linalg as la
from .exact import is_prime

DEFAULT_BUDGET = 10 ** 7


class BudgetExceeded(RuntimeError):
    """The enumeration cap was reached before a verdict."""


def default_budget() -> int:
    env = os.environ.get("ISOWITT_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _as_rows(M, p: int, n: int) -> list[list[int]]:
    if n == 0:
        return []
    a = np.array(M, dtype=object).reshape(n, n)
    return [list(r) for r in la.mod_matrix(a, p).tolist()]


class FqForm:
    """Symmetric invertible Gram over F_p with an orthogonal action matrix.

    ``gram`` and ``action`` are lists of rows of ints in [0, p).
    """

    def __init__(self, p: int, gram, action=None, check: bool = True):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        n = len(gram)
        self.gram = _as_rows(gram, p, n)
        self.action = fm.identity(n) if action is None else _as_rows(action, p, n)
        if check and n:
            G, A = self.gram, self.action
            if G != fm.transpose(G):
                raise ValueError("Gram matrix is not symmetric")
            if fm.det(G, p) == 0:
                raise ValueError("Gram matrix is singular mod p")
            if fm.mm(fm.mm(fm.transpose(A), G, p), A, p) != G:
                raise ValueError("action does not preserve the form")

    @property
    def dim(self) -> int:
        return len(self.gram)

    def scaled(self, c: int) -> "FqForm":
        return FqForm(self.p, [[x * c for x in r] for r in self.gram], self.action, check=False)

    def __repr__(self) -> str:
        return f"FqForm(p={self.p}, gram={self.gram}, action={self.action})"

    def to_json(self) -> dict:
        return {
            "field": self.p,
            "gram": [[str(x) for x in row] for row in self.gram],
            "action": [[str(x) for x in row] for row in self.action],
        }


def _block(*mats) -> list[list[int]]:
    n = sum(len(m) for m in mats)
    out = [[0] * n for _ in range(n)]
    off = 0
    for m in mats:
        for i, row in enumerate(m):
            out[off + i][off:off + len(row)] = row
        off += len(m)
    return out


def direct_sum(*forms: FqForm) -> FqForm:
    p = forms[0].p
    if any(f.p != p for f in forms):
        raise ValueError("forms over different fields")
    return FqForm(p, _block(*[f.gram for f in forms]), _block(*[f.action for f in forms]), check=False)


@dataclass
class WittVerdict:
    neutral: bool
    lagrangian: list[list[int]] | None  # basis vectors of a stable lagrangian
    explored: int = 0

    def to_json(self) -> dict:
        return {"neutral": self.neutral, "lagrangian": self.lagrangian}


# ----------------------------------------------------------- subspaces


def _is_stable(A, X, p) -> bool:
    if not X:
        return True
    return fm.rank(X + [fm.mv(A, x, p) for x in X], p) == fm.rank(X, p)


def _is_isotropic(G, X, p) -> bool:
    return all(fm.bilinear(G, x, y, p) == 0 for i, x in enumerate(X) for y in X[i:])


def _restrict(V: FqForm, W: list[list[int]]) -> FqForm:
    """Form and action restricted to the stable nondegenerate subspace W."""
    p = V.p
    G = [[fm.bilinear(V.gram, u, v, p) for v in W] for u in W]
    images = [fm.mv(V.action, w, p) for w in W]
    C = fm.transpose(fm.coordinates(W, images, p))
    return FqForm(p, G, C, check=False)


def _sub_quotient(G, A, X, p):
    """(gram, action, lifts) of X^perp / X for independent stable isotropic X."""
    n = len(G)
    perp = fm.nullspace([fm.mv(G, x, p) for x in X], n, p)
    cur = list(X)
    r = len(cur)
    Y = []
    for v in perp:
        if fm.rank(cur + [v], p) > r:
            cur.append(v)
            Y.append(v)
            r += 1
    G2 = [[fm.bilinear(G, u, v, p) for v in Y] for u in Y]
    coords = fm.coordinates(cur, [fm.mv(A, y, p) for y in Y], p)
    k = len(X)
    A2 = fm.transpose([c[k:] for c in coords]) if Y else []
    return G2, A2, Y


def sub_quotient(V: FqForm, X) -> tuple[FqForm, list[list[int]]]:
    """The induced form on X^perp / X and vectors lifting its basis.

    X is a list of vectors spanning a stable totally isotropic subspace.
    """
    p = V.p
    X = fm.independent([[int(a) % p for a in x] for x in X], p)
    if not _is_stable(V.action, X, p):
        raise ValueError("subspace is not stable under the action")
    if not _is_isotropic(V.gram, X, p):
        raise ValueError("subspace is not totally isotropic")
    G2, A2, Y = _sub_quotient(V.gram, V.action, X, p)
    return FqForm(p, G2, A2, check=False), Y


@lru_cache(maxsize=4096)
def _factor(chi: tuple, p: int):
    return gfpoly.factor(list(chi), p)


def _primary_components(G, A, p):
    chi = fm.charpoly(A, p)
    out = []
    for f, e in _factor(tuple(chi), p):
        fe = [1]
        for _ in range(e):
            fe = gfpoly.mul(fe, f, p)
        out.append((f, e, fm.nullspace(fm.poly_at(fe, A, p), len(A), p)))
    return out


def isotypic_decompose(V: FqForm) -> list[FqForm]:
    """Self-dual primary components; pairs f, f* with f != f* are dropped."""
    if V.dim == 0:
        return []
    return [
        _restrict(V, W)
        for f, _, W in _primary_components(V.gram, V.action, V.p)
        if gfpoly.reciprocal(f, V.p) == f
    ]


# ----------------------------------------------------------- neutrality


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.used = 0
        self.lock = threading.Lock()

    def spend(self, n: int = 1) -> None:
        with self.lock:
            self.used += n
            if self.used > self.budget:
                raise BudgetExceeded(f"enumeration budget of {self.budget} exceeded")


def _stable_isotropic(G, A, p, counter: _Counter, threads: int = 1):
    """A nonzero stable totally isotropic subspace, or None if none exists."""
    n = len(G)
    socles = []
    for f, _ in _factor(tuple(fm.charpoly(A, p)), p):
        K = fm.nullspace(fm.poly_at(f, A, p), n, p)
        if gfpoly.reciprocal(f, p) != f:
            return K  # orthogonal to everything except the f* component
        socles.append((gfpoly.deg(f), K))
    socles.sort(key=lambda dk: len(dk[1]))
    for d, K in socles:
        found = _search_socle(G, A, p, K, d, counter, threads)
        if found is not None:
            return found
    return None


def _search_socle(G, A, p, K, d, counter: _Counter, threads: int):
    m = len(K)
    # b(A^i v, A^j v) = b(v, A^(j-i) v), so the cyclic span of v is
    # isotropic iff b(v, A^k v) = 0 for 0 <= k < d.
    mats = []
    AkK = [list(v) for v in K]
    for _ in range(d):
        GA = [fm.mv(G, w, p) for w in AkK]
        mats.append([[fm.dot(u, g, p) for g in GA] for u in K])  # K_i . G A^k K_j
        AkK = [fm.mv(A, w, p) for w in AkK]

    def isotropic(c) -> bool:
        nz = [(i, ci) for i, ci in enumerate(c) if ci]
        for M in mats:
            if sum(ci * cj * M[i][j] for i, ci in nz for j, cj in nz) % p:
                return False
        return True

    stop = threading.Event()

    def scan(lead: int):
        n_tail = m - lead - 1
        counter.spend(p ** n_tail)
        for tail in product(range(p), repeat=n_tail):
            if stop.is_set():
                return None
            c = (0,) * lead + (1,) + tail
            if isotropic(c):
                return c
        return None

    hit = None
    if threads > 1 and m > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(scan, range(m)))
        hit = next((r for r in results if r is not None), None)
    else:
        for lead in range(m):
            hit = scan(lead)
            if hit is not None:
                break
    if hit is None:
        return None
    v = [sum(c * K[i][j] for i, c in enumerate(hit)) % p for j in range(len(G))]
    cyc = [v]
    for _ in range(1, d):
        cyc.append(fm.mv(A, cyc[-1], p))
    return fm.independent(cyc, p)


def _neutral(G, A, p, counter: _Counter, threads: int):
    n = len(G)
    if n == 0:
        return []
    if n % 2:
        return None
    S = _stable_isotropic(G, A, p, counter, threads)
    if S is None:
        return None
    S = fm.independent(S, p)
    G2, A2, Y = _sub_quotient(G, A, S, p)
    inner = _neutral(G2, A2, p, counter, threads)
    if inner is None:
        return None
    lifted = [[sum(c * Y[i][j] for i, c in enumerate(x)) % p for j in range(n)] for x in inner]
    return fm.independent(S + lifted, p)


def is_neutral(V: FqForm, budget: int | None = None, threads: int = 1) -> WittVerdict:
    counter = _Counter(default_budget() if budget is None else budget)
    lag = _neutral(V.gram, V.action, V.p, counter, threads)
    return WittVerdict(lag is not None, lag, counter.used)


def is_lagrangian(V: FqForm, X) -> bool:
    X = fm.independent([list(x) for x in X], V.p)
    return 2 * len(X) == V.dim and _is_isotropic(V.gram, X, V.p) and _is_stable(V.action, X, V.p)


def witt_equal(V: FqForm, W: FqForm, budget: int | None = None, threads: int = 1) -> bool:
    if V.p != W.p:
        raise ValueError("forms over different fields")
    return is_neutral(direct_sum(V, W.scaled(-1)), budget, threads).neutral


# ----------------------------------------------------------- dagger reduction


def dagger(T, p: int | None = None) -> FqForm:
    """Reduce a p-primary torsion form to exponent p and read it over F_p.

    Repeatedly replaces M by U^perp / U with U = p^(t-1) M.
    """
    from .zlattice import TorsionForm, _quotient

    orders = list(T.orders)
    if p is None:
        p = _prime_of(orders)
    k = len(orders)
    if k == 0:
        return FqForm(p or 2, [])
    # model: M = Z^k / diag(orders), pairing x^T P y mod 1
    P = la.qmat(T.pairing)
    A = la.qmat(T.action)
    big = la.identity(k)
    small = la.qmat([[orders[i] * int(i == j) for j in range(k)] for i in range(k)])
    M = TorsionForm(orders, T.pairing, T.action)
    while M.rank and M.exponent() > p:
        t = _val(M.exponent(), p)
        # work in Z^k coordinates of the current big lattice
        U = la.lattice_basis(np.hstack([big * Fraction(p ** (t - 1)), small]))
        Uperp = _perp_in(big, U, P)
        M = _quotient(Uperp, U, P, A)
        big, small = Uperp, U
    if M.rank == 0:
        return FqForm(p, [])
    if any(d != p for d in M.orders):
        raise ValueError("torsion form is not p-primary")
    G = [[int(M.pairing[i, j] * p) % p for j in range(M.rank)] for i in range(M.rank)]
    return FqForm(p, G, M.action.tolist())


def _perp_in(big: np.ndarray, U: np.ndarray, P: np.ndarray) -> np.ndarray:
    """{x in big : x^T P u in Z for the columns u of U}."""
    R = U.T @ P @ big
    d = la.common_denominator(R)
    k, n = R.shape
    rel = np.hstack([la.zmat(R * d), la.zmat([[d * int(i == j) for j in range(k)] for i in range(k)])])
    K = la.integer_kernel(rel)[:n, :]
    return la.lattice_basis(big @ la.qmat(K))


def _val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _prime_of(orders) -> int:
    from .exact import prime_divisors

    ps = set()
    for d in orders:
        if d > 1:
            ps.update(prime_divisors(d))
    if len(ps) != 1:
        raise ValueError("torsion form is not primary for a single prime")
    return ps.pop()


def torsion_is_neutral_bruteforce(T) -> bool:
    """Exhaustive search for a stable subgroup equal to its orthogonal.

    Exponential; intended for tiny groups in tests.
    """
    elems = [tuple(e) for e in T.elements()]
    size = len(elems)
    target = int(round(size ** 0.5))
    if target * target != size:
        return False
    zero = tuple(0 for _ in T.orders)

    def add(x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, T.orders))

    def closure(gens):
        H = {zero}
        frontier = [zero]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                for y in (add(x, g), tuple(T.act(x))):
                    if y not in H:
                        H.add(y)
                        frontier.append(y)
        return H

    iso = [x for x in elems if T.pair(x, x) == 0]
    seen = set()

    def grow(H):
        key = frozenset(H)
        if key in seen:
            return False
        seen.add(key)
        if len(H) == target:
            return all(T.pair(x, y) == 0 for x in H for y in H)
        for x in iso:
            if x in H:
                continue
            if any(T.pair(x, h) != 0 for h in H):
                continue
            H2 = closure(list(H) + [x])
            if len(H2) <= target and all(T.pair(a, b) == 0 for a in H2 for b in H2):
                if grow(H2):
                    return True
        return False

    return grow(closure([]))
