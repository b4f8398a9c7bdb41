"""Random bounded forms with an isometry, shared by several test files."""

import random
from fractions import Fraction

import numpy as np

from isowitt import linalg as la
from isowitt.hermitian import companion, fixed_element, trace_form_gram
from isowitt.poly import cyclotomic

SMALL_CYCLOTOMIC = [3, 4, 5, 6, 8, 10, 12]


def _block(rng):
    kind = rng.choice(["line", "line", "swap", "cyclo", "cyclo"])
    c = rng.choice([1, 1, 2, 3, 4, 5, 6, 9, 10, 25, -1, -2, -3, -5, 12, 18])
    if kind == "line":
        return la.qmat([[c]]), la.qmat([[rng.choice([1, -1])]])
    if kind == "swap":
        a = rng.choice([1, 2, 3, 5])
        return la.qmat([[0, c], [c, 0]]) if rng.random() < 0.5 else la.qmat([[a * c, 0], [0, a * c]]), \
            la.qmat([[0, 1], [1, 0]])
    n = rng.choice(SMALL_CYCLOTOMIC)
    S = cyclotomic(n)
    while True:
        h = [rng.randint(-2, 2) for _ in range(rng.randint(1, S.degree // 2))]
        lam = fixed_element(S, h)
        if any(lam.coeffs) and lam.is_invertible():
            break
    G = trace_form_gram(S, lam).gram * c
    return G, companion(S)


def random_instance(rng: random.Random, max_dim: int = 6, conjugate: bool = True):
    """(Gram, action) of a bounded form over Q, possibly in a non-integral basis."""
    grams, actions = [], []
    dim = 0
    while True:
        G, A = _block(rng)
        if dim + G.shape[0] > max_dim:
            if dim:
                break
            continue
        grams.append(G)
        actions.append(A)
        dim += G.shape[0]
        if rng.random() < 0.4:
            break
    G = la.block_diag(*grams)
    A = la.block_diag(*actions)
    if conjugate:
        while True:
            P = la.qmat([[Fraction(rng.randint(-2, 2), rng.choice([1, 1, 2, 3])) + (i == j)
                          for j in range(dim)] for i in range(dim)])
            if la.det(P) != 0:
                break
        G = P.T @ G @ P
        A = la.inverse(P) @ A @ P
    return G, A


def random_stable_sublattice(rng, L):
    """Z[A]-span of a few random vectors of L (full rank)."""
    n = L.dim
    A = L.action
    while True:
        vs = [L.basis @ la.qmat([[rng.randint(-3, 3)] for _ in range(n)]) for _ in range(rng.randint(1, n))]
        gens = []
        for v in vs:
            w = v
            for _ in range(n):
                gens.append(w)
                w = A @ w
        M = np.hstack(gens)
        if la.rank(M) == n:
            return L.with_basis(la.lattice_basis(M))
