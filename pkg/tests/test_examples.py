"""Worked examples for the public operations, one small case each."""

from fractions import Fraction

import numpy as np
import pytest

from isowitt import linalg as la
from isowitt.equiwitt import (
    FqForm, dagger, direct_sum, is_lagrangian, is_neutral, isotypic_decompose, sub_quotient,
    torsion_is_neutral_bruteforce, witt_equal,
)
from isowitt.exact import Place, hilbert_symbol, is_local_square, square_class, valuation
from isowitt.gate import signature_targets
from isowitt.hermitian import AlgElement, local_global_check, sigma, theta, trace, trace_form_gram
from isowitt.poly import (
    LEHMER, IntPoly, NotAPower, cyclotomic, is_reciprocal, power_of_irreducible,
    roots_outside_unit_disk, sturm_count, trace_polynomial,
)
from isowitt.qform import QuadForm, diagonalize, hyperbolic, locally_equivalent
from isowitt.zlattice import GLattice, TorsionForm, discriminant_form, dual, lattice_report, p_part

REAL = Place.real()
GOLDEN = IntPoly((1, -3, 1))
PHI12 = IntPoly((1, 0, -1, 0, 1))


def same_class(a, b):
    return square_class(Fraction(a) / Fraction(b)) == 1


def test_exact_examples():
    assert valuation(Fraction(8, 3), 2) == 3
    assert valuation(1, 7) == 0
    assert valuation(0, 5) == float("inf")
    assert [square_class(x) for x in (18, Fraction(-4, 9), 1)] == [2, -1, 1]
    assert is_local_square(17, Place.finite(2))
    assert is_local_square(2, Place.finite(7))
    assert not is_local_square(-1, REAL)
    assert hilbert_symbol(-1, -1, REAL) == -1
    assert hilbert_symbol(-1, -1, Place.finite(2)) == -1
    assert hilbert_symbol(-1, -1, Place.finite(3)) == 1


def test_poly_examples():
    assert is_reciprocal(PHI12) and is_reciprocal(GOLDEN)
    assert not is_reciprocal(IntPoly((1, 2, 0, 1)))
    assert power_of_irreducible(GOLDEN ** 2) == (GOLDEN, 2)
    assert power_of_irreducible(LEHMER) == (LEHMER, 1)
    with pytest.raises(NotAPower):
        power_of_irreducible(IntPoly((-1, 0, 1)))
    assert trace_polynomial(GOLDEN).coeffs == (-3, 1)
    assert trace_polynomial(PHI12).coeffs == (-3, 0, 1)
    assert trace_polynomial(IntPoly((1, 0, 1))).coeffs == (0, 1)
    assert sturm_count([-3, 1]) == 1
    assert sturm_count([-3, 0, 1], -2, 2) == 2
    assert sturm_count([1, 0, 1]) == 0
    assert roots_outside_unit_disk(LEHMER) == 1
    assert roots_outside_unit_disk(cyclotomic(30)) == 0
    assert roots_outside_unit_disk(GOLDEN ** 2) == 2


def test_signature_target_examples():
    assert signature_targets(cyclotomic(30)) == {(0, 8), (2, 6), (4, 4), (6, 2), (8, 0)}
    assert signature_targets(GOLDEN) == {(1, 1)}


def test_qform_examples():
    d = diagonalize(la.qmat([[0, 1], [1, 0]]))
    assert len(d) == 2 and same_class(d[0] * d[1], -1)
    assert diagonalize(la.identity(3)) == [1, 1, 1]
    d = diagonalize(la.qmat([[2, -1], [-1, 2]]))
    assert d == [2, Fraction(3, 2)]
    assert locally_equivalent(hyperbolic(1), QuadForm([[1, 0], [0, -1]]), Place.finite(5))
    assert locally_equivalent(QuadForm([[1, 0], [0, 1]]), QuadForm([[2, 0], [0, 2]]), REAL)
    assert not locally_equivalent(QuadForm([[1, 0], [0, 1]]), QuadForm([[1, 0], [0, 5]]), Place.finite(5))


def test_algebra_examples():
    a = AlgElement.generator(PHI12)
    assert a.inverse() == AlgElement([0, 1, 0, -1], PHI12)
    assert sigma(PHI12, AlgElement.scalar(1, PHI12)) == AlgElement.scalar(1, PHI12)
    assert trace(GOLDEN, AlgElement.generator(GOLDEN)) == 3
    assert trace(LEHMER, AlgElement.scalar(1, LEHMER)) == 10
    assert trace(PHI12, a * a) == 2


def test_phi12_unit_twist_is_definite():
    # all roots of t^4 - t^2 + 1 are on the unit circle and tr(x sigma(x)) is positive
    f = trace_form_gram(PHI12, AlgElement.scalar(1, PHI12))
    assert f.invariants().signature == (4, 0)


def test_theta_and_local_global_examples():
    assert theta("real", -2) == 1
    assert theta("unramified", 3) == 1
    assert local_global_check([])
    assert not local_global_check([1])
    assert local_global_check([1, 1])


def test_lattice_examples():
    H = hyperbolic(1).gram
    assert dual(GLattice(H)) == GLattice(H)
    two = GLattice(H, la.identity(2) * 2)
    assert dual(two) == GLattice(H, la.identity(2) * Fraction(1, 2))
    rep = lattice_report(GLattice([[1, 0], [0, -1]]))
    assert rep.integral and rep.unimodular and not rep.even
    assert discriminant_form(GLattice(H)).rank == 0
    T5 = discriminant_form(GLattice([[5, 0], [0, 1]]))
    assert p_part(T5, 2).rank == 0
    assert p_part(discriminant_form(GLattice(H)), 3).rank == 0


def test_witt_examples():
    V = FqForm(3, [[1, 0], [0, 1]])
    comps = isotypic_decompose(V)
    assert len(comps) == 1 and comps[0].dim == 2
    # M + M^dual with action 2 on M and 2^-1 = 3 on M^dual over F_5
    W = FqForm(5, [[0, 1], [1, 0]], [[2, 0], [0, 3]])
    assert isotypic_decompose(W) == []
    Q, _ = sub_quotient(V, [])
    assert Q.dim == 2
    Q, _ = sub_quotient(FqForm(5, [[0, 1], [1, 0]]), [[1, 0]])
    assert Q.dim == 0
    U = FqForm(5, [[1, 0], [0, 2]])
    S = direct_sum(U, U.scaled(-1))
    v = is_neutral(S)
    assert v.neutral and is_lagrangian(S, [[1, 0, 1, 0], [0, 1, 0, 1]])
    assert not witt_equal(FqForm(3, [[0, 1], [1, 0]], [[0, 1], [1, 0]]), FqForm(3, []))


def _torsion(orders, pairing):
    k = len(orders)
    P = np.array([[Fraction(x) for x in row] for row in pairing], dtype=object).reshape(k, k)
    return TorsionForm(list(orders), P, la.zmat([[int(i == j) for j in range(k)] for i in range(k)]))


def test_dagger_examples():
    D = dagger(_torsion([5], [["2/5"]]))
    assert D.p == 5 and D.gram == [[2]]
    T = _torsion([2, 4], [["1/2", 0], [0, "1/4"]])
    assert is_neutral(dagger(T)).neutral == torsion_is_neutral_bruteforce(T)
