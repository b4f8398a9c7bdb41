from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from isowitt import fpmat, linalg as la

square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(square)
def test_det_and_charpoly_against_sympy(rows):
    M = la.qmat(rows)
    S = sympy.Matrix(rows)
    assert la.det(M) == S.det()
    x = sympy.Symbol("x")
    expected = list(reversed(S.charpoly(x).all_coeffs()))
    assert la.charpoly(M) == expected


@settings(max_examples=60, deadline=None)
@given(square)
def test_smith_against_sympy(rows):
    M = la.zmat(rows)
    diag, U, V = la.smith(M)
    D = U @ M @ V
    n = len(rows)
    assert all(D[i, j] == 0 for i in range(n) for j in range(n) if i != j)
    assert abs(la.det(la.qmat(U))) == 1 and abs(la.det(la.qmat(V))) == 1
    theirs = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    assert sorted(abs(theirs[i, i]) for i in range(n)) == sorted(diag)
    for a, b in zip(diag, diag[1:]):
        assert b == 0 or (a != 0 and b % a == 0)


@settings(max_examples=60, deadline=None)
@given(square)
def test_inverse_and_nullspace(rows):
    M = la.qmat(rows)
    K = la.nullspace(M)
    assert K.shape[1] == M.shape[0] - la.rank(M)
    assert not (M @ K).any() if K.shape[1] else True
    if la.det(M) != 0:
        assert (la.inverse(M) @ M == la.identity(M.shape[0])).all()


def test_lattice_basis_is_canonical():
    a = la.qmat([[2, 0], [0, 3]])
    b = la.qmat([[2, 2], [0, 3]])  # same lattice, different generators
    assert not (la.lattice_basis(a) == la.lattice_basis(la.qmat([[2, 0], [0, 1]]))).all()
    assert (la.lattice_basis(a) == la.lattice_basis(np.hstack([a, b]))).all()
    half = la.qmat([[Fraction(1, 2), 0], [0, 1]])
    assert la.lattice_basis(half)[0, 0] == Fraction(1, 2)


def test_integer_kernel():
    K = la.integer_kernel(la.zmat([[2, 4, 6]]))
    assert K.shape[1] == 2
    assert not (la.zmat([[2, 4, 6]]) @ K).any()


@settings(max_examples=60, deadline=None)
@given(square, st.sampled_from([2, 3, 5, 7]))
def test_fp_kernels_against_sympy(rows, p):
    n = len(rows)
    S = sympy.Matrix(rows)
    assert fpmat.det(rows, p) == S.det() % p
    assert fpmat.rank(rows, p) == la.rank_mod(la.zmat(rows), p)
    x = sympy.Symbol("x")
    expected = [int(c) % p for c in reversed(S.charpoly(x).all_coeffs())]
    assert fpmat.charpoly(rows, p) == expected
    for v in fpmat.nullspace(rows, n, p):
        assert fpmat.mv(rows, v, p) == [0] * n
