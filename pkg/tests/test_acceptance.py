"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import math
import random
import time
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from _instances import random_instance, random_stable_sublattice
from isowitt import fpmat as fm
from isowitt import linalg as la
from isowitt.equiwitt import FqForm, direct_sum, is_neutral, witt_equal
from isowitt.exact import legendre, prime_divisors, square_class, valuation
from isowitt.gate import check_conditions, k3_check, salem_search
from isowitt.hermitian import local_splitting
from isowitt.poly import LEHMER, IntPoly, cyclotomic, is_irreducible, roots_outside_unit_disk
from isowitt.qform import QuadForm, hyperbolic, n_plane, direct_sum as qsum
from isowitt.realize import construct
from isowitt.reduction import boundary, initial_lattice, is_unimodular_at, unimodular_witness
from isowitt.twoadic import spinor_norm


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        assert ok, detail
    return emit


# 1 ------------------------------------------------------------------ gate


def _gate_by_definition(S, r, s):
    c = S.coeffs
    reciprocal = c == tuple(reversed(c))
    roots = np.roots([float(x) for x in reversed(c)])
    m = int(sum(abs(z) > 1 + 1e-7 for z in roots))
    c2 = m <= r and m <= s and (r - m) % 2 == 0 and (s - m) % 2 == 0

    def square(n):
        return n >= 0 and math.isqrt(n) ** 2 == n

    c3 = (r + s) % 2 == 0 and square(abs(S(1))) and square(abs(S(-1))) \
        and square((-1) ** ((r + s) // 2) * S(1) * S(-1))
    return reciprocal and c2 and c3 and (r - s) % 8 == 0 and S.degree == r + s


def test_criterion_1_gate_pattern(report):
    t0 = time.perf_counter()
    ours = {(r, 10 - r): check_conditions(LEHMER, r, 10 - r).verdict for r in range(11)}
    oracle = {(r, 10 - r): _gate_by_definition(LEHMER, r, 10 - r) for r in range(11)}
    named = ours[(9, 1)] and ours[(1, 9)] and ours[(5, 5)] and not ours[(10, 0)]
    dt = time.perf_counter() - t0
    passing = sorted(k for k, v in ours.items() if v)
    report(1, ours == oracle and named and dt < 1, f"passing signatures {passing}, {dt:.2f}s")


# 2 ------------------------------------------------------- H and N blocks


def test_criterion_2_block_discriminants(report):
    ok = True
    for n in range(1, 7):
        H = hyperbolic(n).gram
        NH = qsum(n_plane(), hyperbolic(n - 1)).gram if n > 1 else n_plane().gram
        d_h = (-1) ** n * la.det(H)
        d_n = (-1) ** n * la.det(NH)
        ok &= d_h == 1 and d_n == -3
    report(2, ok, "disc H^n = 1, disc(N + H^(n-1)) = -3 for n = 1..6")


# 3 ----------------------------------------------------- product formula


def test_criterion_3_product_formula(report):
    rng = random.Random(3)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(500):
        n = rng.randint(1, 6)
        d = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 200), rng.randint(1, 50)) for _ in range(n)]
        G = la.qmat([[d[i] if i == j else 0 for j in range(n)] for i in range(n)])
        total = math.prod(QuadForm(G).invariants().hasse.values())
        bad += total != 1
    dt = time.perf_counter() - t0
    report(3, bad == 0 and dt < 10, f"500 forms, {bad} violations, {dt:.1f}s")


# 4 -------------------------------------------------- Witt neutrality F_3


def test_criterion_4_neutrality_over_f3(report):
    p = 3
    t0 = time.perf_counter()
    total = disagree = 0
    for n in range(1, 5):
        cells = [(i, j) for i in range(n) for j in range(i, n)]
        for vals in product(range(p), repeat=len(cells)):
            G = [[0] * n for _ in range(n)]
            for (i, j), v in zip(cells, vals):
                G[i][j] = G[j][i] = v
            det = fm.det(G, p)
            if det == 0:
                continue
            total += 1
            disc = (-1) ** (n // 2) * det
            rule = n % 2 == 0 and legendre(disc, p) == 1
            disagree += is_neutral(FqForm(p, G, check=False)).neutral != rule
    dt = time.perf_counter() - t0
    report(4, disagree == 0 and dt < 30, f"{total} forms, {disagree} disagreements, {dt:.1f}s")


# 5 --------------------------------------------------- boundary properties


def test_criterion_5_boundary_properties(report):
    rng = random.Random(2024)
    t0 = time.perf_counter()
    failures = []
    witnesses = nonneutral = 0
    for k in range(100):
        p = rng.choice([2, 3, 5])
        G1, A1 = random_instance(rng, 3)
        G2, A2 = random_instance(rng, 6 - G1.shape[0])
        b1 = boundary(QuadForm(G1), A1, p).form
        b2 = boundary(QuadForm(G2), A2, p).form
        b12 = boundary(QuadForm(la.block_diag(G1, G2)), la.block_diag(A1, A2), p).form
        if not witt_equal(b12, direct_sum(b1, b2)):
            failures.append((k, "additivity"))
        L = initial_lattice(QuadForm(G1), A1)
        start = random_stable_sublattice(rng, L)
        if not witt_equal(boundary(QuadForm(G1), A1, p, start=start).form, b1):
            failures.append((k, "start independence"))
        W = unimodular_witness(QuadForm(G1), A1, p)
        neutral = is_neutral(b1).neutral
        if (W is not None) != neutral:
            failures.append((k, "witness iff neutral"))
        if W is not None:
            witnesses += 1
            if not (is_unimodular_at(W, p) and W.is_stable()):
                failures.append((k, "witness check"))
        else:
            nonneutral += 1
    dt = time.perf_counter() - t0
    report(5, not failures and dt < 300,
           f"100 instances ({witnesses} witnesses, {nonneutral} obstructed), failures {failures[:3]}, {dt:.1f}s")


# 6 ------------------------------------------------------ Springer failure


def _isotropic_lines(G):
    """Rational isotropic lines of a binary form, as vectors (1, 0) or (t, 1)."""
    a, b, c = (Fraction(x) for x in (G[0, 0], G[0, 1], G[1, 1]))
    lines = [(Fraction(1), Fraction(0))] if a == 0 else []
    # (t, 1) is isotropic iff a t^2 + 2 b t + c = 0
    if a == 0:
        if b != 0:
            lines.append((-c / (2 * b), Fraction(1)))
        return lines
    disc = b * b - a * c
    if disc < 0:
        return lines
    r = Fraction(math.isqrt(disc.numerator), math.isqrt(disc.denominator))
    if r * r != disc:
        return lines
    for t in sorted({(-b + r) / a, (-b - r) / a}):
        lines.append((t, Fraction(1)))
    return lines


def test_criterion_6_springer_failure(report):
    swap = la.qmat([[0, 1], [1, 0]])
    zero_classes = []
    for scale in (1, 2):
        G = la.qmat([[0, scale], [scale, 0]])
        form = boundary(QuadForm(G), swap, 2).form
        zero_classes.append(is_neutral(form).neutral)
    G = la.qmat([[0, 1], [1, 0]])
    lines = _isotropic_lines(G)
    stable = []
    for v in lines:
        w = la.qmat([[x] for x in v])
        image = swap @ w
        stable.append(la.rank(np.hstack([w, image])) == 1)
    ok = all(zero_classes) and len(lines) == 2 and not any(stable)
    report(6, ok, f"boundary zero for both scalings: {zero_classes}; isotropic lines {[f'({x}, {y})' for x, y in lines]}, stable: {stable}")


# 7 --------------------------------------------------------------- spinor


def _random_form(rng, n):
    while True:
        G = la.qmat([[0] * n for _ in range(n)])
        for i in range(n):
            for j in range(i, n):
                G[i, j] = G[j, i] = Fraction(rng.randint(-6, 6))
        if la.det(G) != 0:
            return G


def _reflection(rng, G):
    n = G.shape[0]
    while True:
        v = la.qmat([[rng.randint(-3, 3)] for _ in range(n)])
        q = (v.T @ G @ v)[0, 0]
        if q != 0:
            return la.identity(n) - v @ (v.T @ G) * (Fraction(2) / q)


def test_criterion_7_zassenhaus(report):
    rng = random.Random(7)
    t0 = time.perf_counter()
    bad_minus = bad_hom = 0
    for _ in range(100):
        n = rng.choice([2, 4, 6])
        G = _random_form(rng, n)
        bad_minus += spinor_norm(QuadForm(G), -la.identity(n)).value != square_class(la.det(G))
    for _ in range(100):
        n = rng.randint(2, 4)
        G = _random_form(rng, n)
        a = _reflection(rng, G) @ _reflection(rng, G)
        b = _reflection(rng, G) @ _reflection(rng, G)
        f = QuadForm(G)
        bad_hom += spinor_norm(f, a @ b) != spinor_norm(f, a) * spinor_norm(f, b)
    dt = time.perf_counter() - t0
    report(7, bad_minus == 0 and bad_hom == 0 and dt < 30,
           f"-id mismatches {bad_minus}/100, homomorphism mismatches {bad_hom}/100, {dt:.1f}s")


# 8 ------------------------------------------------------------ realize


def test_criterion_8_constructive_instances(report):
    details = []
    ok = True
    t0 = time.perf_counter()
    cert = construct(LEHMER, 1, 9)
    dt1 = time.perf_counter() - t0
    G, A = cert.gram, cert.action
    ok &= cert.verified and abs(la.det(G)) == 1 and all(G[i, i] % 2 == 0 for i in range(10))
    ok &= QuadForm(G).invariants().signature == (1, 9)
    ok &= tuple(la.charpoly(A)) == LEHMER.coeffs and dt1 < 60
    details.append(f"Lehmer (1,9) {dt1:.1f}s")

    t0 = time.perf_counter()
    S = cyclotomic(30)
    cert = construct(S, 8, 0)
    dt2 = time.perf_counter() - t0
    G, A = cert.gram, cert.action
    ok &= cert.verified and la.det(G) == 1 and all(G[i, i] % 2 == 0 for i in range(8))
    ok &= QuadForm(G).invariants().signature == (8, 0)
    powers = {}
    P = la.identity(8)
    for k in range(1, 31):
        P = P @ A
        powers[k] = bool((P == la.identity(8)).all())
    order = min(k for k, v in powers.items() if v) if any(powers.values()) else None
    ok &= order == 30 and dt2 < 60
    details.append(f"Phi30 (8,0) order {order} {dt2:.1f}s")
    report(8, ok, "; ".join(details))


# 9 -------------------------------------------------------------- K3 gate


def test_criterion_9_k3_search(report):
    t0 = time.perf_counter()
    found = salem_search(22, limit=1, seed=1)
    dt = time.perf_counter() - t0
    ok = bool(found) and all(k3_check(S) for S in found) and dt < 300
    # cyclotomic products of degree 22 have every root on the unit circle
    rng = random.Random(9)
    pool = [n for n in range(3, 100) if cyclotomic(n).degree <= 22]
    checked = 0
    for _ in range(60):
        S, deg = IntPoly((1,)), 0
        while deg < 22:
            n = rng.choice([n for n in pool if cyclotomic(n).degree <= 22 - deg])
            S, deg = S * cyclotomic(n), deg + cyclotomic(n).degree
        ok &= roots_outside_unit_disk(S) == 0 and not k3_check(S)
        checked += 1
    for n in (23, 46, 69, 92):
        ok &= not k3_check(cyclotomic(n))
    report(9, ok, f"found {[list(S.coeffs) for S in found]} in {dt:.1f}s; {checked} cyclotomic products rejected")


# 10 ------------------------------------------------------- parity at odd p


def test_criterion_10_parity(report):
    rng = random.Random(10)
    t0 = time.perf_counter()
    instances = mismatches = 0
    tried = 0
    while instances < 50 and tried < 20000:
        tried += 1
        g = rng.randint(1, 4)
        half = [rng.randint(-8, 8) for _ in range(g)]
        low = [1] + half[:-1]
        S = IntPoly(tuple(low + [half[-1]] + list(reversed(low))))
        s1, sm1 = S(1), S(-1)
        if s1 == 0 or sm1 == 0 or not is_irreducible(S):
            continue
        for p in prime_divisors(abs(s1 * sm1)):
            if p == 2:
                continue
            data = local_splitting(S, p)
            ram = [w for w in data.places if w.type.startswith("ramified")]
            if not data.certified or not ram:
                continue
            instances += 1
            plus = sum(w.residue_degree for w in ram if w.type == "ramified_plus")
            minus = sum(w.residue_degree for w in ram if w.type == "ramified_minus")
            v1, vm1 = valuation(s1, p), valuation(sm1, p)
            # odd residue characteristic: delta is odd
            ok = (v1 + vm1 - plus - minus) % 2 == 0 and (v1 - plus) % 2 == 0 and (vm1 - minus) % 2 == 0
            mismatches += not ok
    dt = time.perf_counter() - t0
    report(10, instances >= 50 and mismatches == 0 and dt < 60,
           f"{instances} certified ramified instances, {mismatches} mismatches, {dt:.1f}s")
