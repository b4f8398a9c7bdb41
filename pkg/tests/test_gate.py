import math
import numpy as np
import pytest

from isowitt.gate import K3_SALEM_22, check_conditions, k3_check, salem_search, signature_targets
from isowitt.poly import LEHMER, IntPoly, cyclotomic, is_irreducible, roots_outside_unit_disk


def oracle(S: IntPoly, r: int, s: int) -> bool:
    """Necessary conditions evaluated from their definitions, with a numeric
    root count (the tested polynomials have roots well away from |z| = 1)."""
    c = S.coeffs
    c1 = c == tuple(reversed(c))
    roots = np.roots([float(x) for x in reversed(c)])
    m = int(sum(abs(z) > 1 + 1e-7 for z in roots))
    c2 = m <= r and m <= s and (r - m) % 2 == 0 and (s - m) % 2 == 0

    def sq(n):
        return n >= 0 and math.isqrt(n) ** 2 == n

    n = (r + s) // 2
    c3 = (r + s) % 2 == 0 and sq(abs(S(1))) and sq(abs(S(-1))) and sq((-1) ** n * S(1) * S(-1))
    return c1 and c2 and c3 and (r - s) % 8 == 0 and S.degree == r + s


SIGNATURES = [(r, 10 - r) for r in range(11)]


@pytest.mark.parametrize("r,s", SIGNATURES)
def test_lehmer_pattern_matches_oracle(r, s):
    assert check_conditions(LEHMER, r, s).verdict == oracle(LEHMER, r, s)


def test_lehmer_examples():
    assert check_conditions(LEHMER, 9, 1).verdict
    assert check_conditions(LEHMER, 1, 9).verdict
    assert check_conditions(LEHMER, 5, 5).verdict
    rep = check_conditions(LEHMER, 10, 0)
    assert not rep.verdict and not rep.c2
    assert rep.m == 1 and rep.constructive


def test_golden_ratio_square_fails_c3():
    rep = check_conditions(IntPoly((1, -3, 1)), 1, 1)
    assert rep.c1 and rep.c2 and not rep.c3


def test_linear_factors():
    rep = check_conditions(IntPoly((-1, 1)) ** 8, 8, 0)
    assert rep.linear and rep.verdict
    assert not check_conditions(IntPoly((-1, 1)) ** 4, 4, 0).verdict  # 4 - 0 not divisible by 8


@pytest.mark.parametrize("n", [5, 7, 8, 9, 12, 15, 16, 20, 24, 30])
def test_cyclotomic_pattern_matches_oracle(n):
    S = cyclotomic(n)
    d = S.degree
    for r in range(d + 1):
        s = d - r
        assert check_conditions(S, r, s).verdict == oracle(S, r, s), (n, r, s)


def test_signature_targets():
    assert signature_targets(LEHMER) == {(1 + 2 * a, 1 + 2 * (4 - a)) for a in range(5)}
    assert signature_targets(cyclotomic(12)) == {(4, 0), (2, 2), (0, 4)}


def test_frozen_k3_polynomial():
    assert k3_check(K3_SALEM_22)
    assert is_irreducible(K3_SALEM_22)
    assert roots_outside_unit_disk(K3_SALEM_22) == 1


def test_k3_rejects_cyclotomic_and_bad_values():
    assert not k3_check(cyclotomic(23))
    assert not k3_check(cyclotomic(46))
    assert not k3_check(LEHMER * cyclotomic(5) ** 3)


def test_salem_search_small_degree_finds_lehmer():
    found = salem_search(10, limit=5, seed=1)
    assert found
    for S in found:
        assert roots_outside_unit_disk(S) == 1 and is_irreducible(S)
        assert abs(S(1)) == 1 and abs(S(-1)) == 1
