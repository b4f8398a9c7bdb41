import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from isowitt import linalg as la
from isowitt.exact import Place
from isowitt.qform import (
    DegenerateForm, QuadForm, diagonalize, direct_sum, e8_gram, hasse, hyperbolic,
    locally_equivalent, n_plane, standard_even_unimodular,
)

REAL = Place.real()
sym = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.integers(-5, 5), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2)
    .map(lambda xs: _symmetric(n, xs)))


def _symmetric(n, xs):
    M = [[0] * n for _ in range(n)]
    k = 0
    for i in range(n):
        for j in range(i, n):
            M[i][j] = M[j][i] = xs[k]
            k += 1
    return M


def test_building_blocks():
    H = hyperbolic(1).invariants()
    assert (H.det, H.disc, H.signature) == (-1, 1, (1, 1))
    N = n_plane().invariants()
    assert (N.det, N.disc, N.signature) == (3, -3, (2, 0))
    assert la.det(e8_gram()) == 1
    assert QuadForm(e8_gram()).invariants().signature == (8, 0)


def test_degenerate_rejected():
    with pytest.raises(DegenerateForm):
        QuadForm([[1, 1], [1, 1]])


@settings(max_examples=80, deadline=None)
@given(sym)
def test_diagonalization_preserves_det_and_signature(rows):
    M = la.qmat(rows)
    d = la.det(M)
    if d == 0:
        return
    diag = diagonalize(M)
    prod = Fraction(1)
    for x in diag:
        prod *= x
    # congruence by a determinant-one change of basis
    assert prod == d
    import sympy

    eig = sympy.Matrix(rows).eigenvals()
    neg = sum(m for e, m in eig.items() if sympy.re(sympy.N(e)) < 0)
    assert sum(1 for x in diag if x < 0) == neg


@settings(max_examples=60, deadline=None)
@given(sym, st.lists(st.integers(-3, 3), min_size=16, max_size=16))
def test_invariants_are_congruence_invariant(rows, entries):
    M = la.qmat(rows)
    n = M.shape[0]
    if la.det(M) == 0:
        return
    P = la.qmat([entries[i * n:(i + 1) * n] for i in range(n)])
    if la.det(P) == 0:
        return
    f, g = QuadForm(M), QuadForm(P.T @ M @ P)
    for v in [REAL] + [Place.finite(p) for p in (2, 3, 5, 7, 11)]:
        assert locally_equivalent(f, g, v)
        assert hasse(f, v) == hasse(g, v)


def test_hasse_product_formula_on_random_forms():
    rng = random.Random(7)
    for _ in range(100):
        d = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 12)) for _ in range(rng.randint(1, 5))]
        inv = QuadForm(la.qmat([[d[i] if i == j else 0 for j in range(len(d))] for i in range(len(d))])).invariants()
        total = 1
        for e in inv.hasse.values():
            total *= e
        assert total == 1


@pytest.mark.parametrize("r,s", [(1, 1), (2, 2), (8, 0), (9, 1), (1, 9), (0, 16), (3, 3)])
def test_standard_even_unimodular(r, s):
    G = standard_even_unimodular(r, s)
    assert abs(la.det(G)) == 1
    assert all(G[i, i] % 2 == 0 for i in range(G.shape[0]))
    assert QuadForm(G).invariants().signature == (r, s)


def test_direct_sum_signature():
    f = direct_sum(hyperbolic(2), n_plane())
    assert f.invariants().signature == (4, 2)
