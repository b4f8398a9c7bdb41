"""Exact matrix helpers over Q, Z and F_p.

Matrices are numpy object arrays holding ``Fraction`` (or ``int``) entries so
that ``@`` and ``.T`` work while every operation stays exact.  Elimination
routines convert to nested lists internally.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np


def qmat(rows) -> np.ndarray:
    """Rational matrix (object array of Fraction) from nested sequences."""
    a = np.array(rows, dtype=object)
    if a.ndim == 1:
        a = a.reshape(len(a), 1) if len(a) else a.reshape(0, 0)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = v if isinstance(v, Fraction) else Fraction(v)
    return out


def zmat(rows) -> np.ndarray:
    """Integer matrix (object array of int); rejects non-integral entries."""
    a = qmat(rows)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        if v.denominator != 1:
            raise ValueError(f"non-integral entry {v}")
        out[idx] = int(v.numerator)
    return out


def identity(n: int) -> np.ndarray:
    return qmat([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def zeros(m: int, n: int) -> np.ndarray:
    return qmat([[0] * n for _ in range(m)]) if m and n else np.empty((m, n), dtype=object)


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = zeros(n, n)
    k = 0
    for b in blocks:
        d = b.shape[0]
        out[k:k + d, k:k + d] = b
        k += d
    return out


def to_lists(M: np.ndarray) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in M]


def is_integral(M: np.ndarray) -> bool:
    return all(Fraction(x).denominator == 1 for x in M.flat)


def is_symmetric(M: np.ndarray) -> bool:
    return M.shape[0] == M.shape[1] and all(
        M[i, j] == M[j, i] for i in range(M.shape[0]) for j in range(i)
    )


def common_denominator(M: np.ndarray) -> int:
    d = 1
    for x in M.flat:
        q = Fraction(x).denominator
        d = d * q // gcd(d, q)
    return d


def _rref(A: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    A = [row[:] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def det(M: np.ndarray) -> Fraction:
    A = to_lists(M)
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d *= A[c][c]
        inv = 1 / A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def rank(M: np.ndarray) -> int:
    if M.size == 0:
        return 0
    return len(_rref(to_lists(M))[1])


def inverse(M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    A = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(to_lists(M))]
    R, piv = _rref(A)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return qmat([row[n:] for row in R])


def solve(M: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Solve M X = B for square invertible M."""
    return inverse(M) @ B


def nullspace(M: np.ndarray) -> np.ndarray:
    """Basis (as columns) of the right kernel of M over Q."""
    m, n = M.shape
    if m == 0:
        return identity(n)
    R, piv = _rref(to_lists(M))
    free = [j for j in range(n) if j not in piv]
    cols = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        cols.append(v)
    if not cols:
        return np.empty((n, 0), dtype=object)
    return qmat(cols).T.copy()


def charpoly(M: np.ndarray) -> list[Fraction]:
    """Characteristic polynomial det(tI - M), coefficients constant term first.

    Faddeev--LeVerrier recursion; exact over Q.
    """
    n = M.shape[0]
    A = qmat(M)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = zeros(n, n) if n else A
    I = identity(n)
    for k in range(1, n + 1):
        Mk = A @ Mk + coeffs[n - k + 1] * I
        AM = A @ Mk
        coeffs[n - k] = -sum(AM[i, i] for i in range(n)) / k
    return coeffs


# ---------------------------------------------------------------- integers


def hnf_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; returns the nonzero rows.

    The rows of the result generate the same Z-module as the input rows.
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[i0] = A[i0], A[r]
            clean = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-a for a in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
    return A[:r]


def smith(M: np.ndarray) -> tuple[list[int], np.ndarray, np.ndarray]:
    """Smith normal form: returns (diagonal, U, V) with U @ M @ V diagonal.

    U and V are unimodular integer matrices; the diagonal is nonnegative with
    each entry dividing the next (zeros last).
    """
    A = [list(map(int, r)) for r in zmat(M)]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not entries:
                break
            _, i0, j0 = min(entries)
            swap_rows(t, i0)
            swap_cols(t, j0)
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // A[t][t])
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // A[t][t])
                    if A[t][j]:
                        done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    diag = [A[i][i] for i in range(min(m, n))]
    return diag, zmat(U) if m else np.empty((0, 0), dtype=object), zmat(V) if n else np.empty((0, 0), dtype=object)


def integer_kernel(K: np.ndarray) -> np.ndarray:
    """Basis (columns) of {x in Z^n : K x = 0}."""
    m, n = K.shape
    if m == 0:
        return zmat([[int(i == j) for j in range(n)] for i in range(n)])
    diag, _, V = smith(K)
    r = sum(1 for d in diag if d)
    return V[:, r:]


def lattice_basis(gens: np.ndarray) -> np.ndarray:
    """Canonical basis (columns) of the Z-span of the rational columns of gens.

    Uses the HNF of the scaled generators, so two lattices are equal exactly
    when their canonical bases are equal.
    """
    d = common_denominator(gens)
    rows = [[int(x * d) for x in gens[:, j]] for j in range(gens.shape[1])]
    H = hnf_rows(rows)
    return qmat([[Fraction(x, d) for x in row] for row in H]).T.copy() if H else np.empty((gens.shape[0], 0), dtype=object)


# ---------------------------------------------------------------- F_p


def _rref_mod(A: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    A = [[x % p for x in row] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def mod_matrix(M, p: int) -> np.ndarray:
    """Reduce an integer or p-integral rational matrix mod p (entries in [0, p))."""
    a = np.array(M, dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        v = Fraction(v)
        if v.denominator % p == 0:
            raise ValueError(f"entry {v} is not {p}-integral")
        out[idx] = v.numerator * pow(v.denominator, -1, p) % p
    return out


def rank_mod(M: np.ndarray, p: int) -> int:
    if M.size == 0:
        return 0
    return len(_rref_mod([list(r) for r in M], p)[1])


def nullspace_mod(M: np.ndarray, p: int) -> np.ndarray:
    """Basis (columns) of the right kernel of M over F_p."""
    m, n = M.shape
    if m == 0:
        return np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object).reshape(n, n)
    R, piv = _rref_mod([list(r) for r in M], p)
    free = [j for j in range(n) if j not in piv]
    cols = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = (-R[i][f]) % p
        cols.append(v)
    if not cols:
        return np.empty((n, 0), dtype=object)
    return np.array(cols, dtype=object).T.copy()
