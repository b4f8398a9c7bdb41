"""Arithmetic gate: the necessary conditions on (S, r, s) for an automorphism of
an even unimodular lattice of signature (r, s) with characteristic polynomial S.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass

from .exact import prime_divisors
from .poly import (
    IntPoly,
    cyclotomic,
    from_trace_polynomial,
    is_reciprocal,
    power_of_irreducible,
    roots_outside_unit_disk,
    sturm_count,
    trace_polynomial,
)

# Found by salem_search(22, seed=1); passes k3_check.
K3_SALEM_22 = IntPoly((1, -1, -1, 1, 0, 0, 0, 0, 0, -1, 0, 1, 0, -1, 0, 0, 0, 0, 0, 1, -1, -1, 1))


def _is_int_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@dataclass(frozen=True)
class GateReport:
    c1: bool
    c2: bool
    c3: bool
    congruence_mod8: bool
    degree_match: bool
    m: int | None
    verdict: bool
    constructive: bool = False
    linear: bool = False
    P: tuple[int, ...] = ()
    N: int = 1

    def to_json(self) -> dict:
        d = asdict(self)
        d["P"] = [str(c) for c in self.P]
        return d


def check_conditions(S: IntPoly, r: int, s: int) -> GateReport:
    if r < 0 or s < 0:
        raise ValueError("signature entries must be nonnegative")
    P, N = power_of_irreducible(S)
    congruence = (r - s) % 8 == 0
    degree_match = S.degree == r + s
    if P.degree == 1:
        # S = (t -+ 1)^N: the identity or minus the identity on any even
        # unimodular lattice of the right rank.
        ok = P.coeffs in ((-1, 1), (1, 1))
        return GateReport(
            c1=ok, c2=ok, c3=ok, congruence_mod8=congruence, degree_match=degree_match,
            m=0 if ok else None, verdict=ok and congruence and degree_match,
            constructive=False, linear=True, P=P.coeffs, N=N,
        )
    c1 = is_reciprocal(S)
    if c1 and (S(1) == 0 or S(-1) == 0):
        raise ValueError("S vanishes at +1 or -1 with a nonlinear irreducible factor")
    if c1 and S.degree % 2 == 0:
        m = roots_outside_unit_disk(S)
        c2 = m <= r and m <= s and (m - r) % 2 == 0 and (m - s) % 2 == 0
    else:
        m, c2 = None, False
    s1, sm1 = S(1), S(-1)
    if (r + s) % 2:
        c3 = False
    else:
        c3 = (
            _is_int_square(abs(s1))
            and _is_int_square(abs(sm1))
            and _is_int_square((-1) ** ((r + s) // 2) * s1 * sm1)
        )
    verdict = c1 and c2 and c3 and congruence and degree_match
    return GateReport(
        c1=c1, c2=c2, c3=c3, congruence_mod8=congruence, degree_match=degree_match,
        m=m, verdict=verdict, constructive=abs(s1) == 1 and abs(sm1) == 1,
        linear=False, P=P.coeffs, N=N,
    )


def signature_targets(S: IntPoly) -> set[tuple[int, int]]:
    """Signatures (m + 2d+, m + 2d-) with d+ + d- = deg S / 2 - m."""
    if not is_reciprocal(S):
        raise ValueError("S must be reciprocal")
    m = roots_outside_unit_disk(S)
    free = (S.degree - 2 * m) // 2
    return {(m + 2 * dp, m + 2 * (free - dp)) for dp in range(free + 1)}


def k3_check(S: IntPoly) -> bool:
    if S.degree != 22 or not S.is_monic() or not is_reciprocal(S):
        return False
    s1, sm1 = S(1), S(-1)
    if s1 == 0 or sm1 == 0:
        return False
    if not (_is_int_square(abs(s1)) and _is_int_square(abs(sm1)) and _is_int_square(-s1 * sm1)):
        return False
    # cheap Sturm count before the irreducibility certificate
    if roots_outside_unit_disk(S) != 1:
        return False
    try:
        _, N = power_of_irreducible(S)
    except ValueError:
        return False
    return N == 1


def _totient(n: int) -> int:
    out = n
    for p in prime_divisors(n):
        out -= out // p
    return out


def _cyclotomic_trace_factors(max_degree: int) -> list[IntPoly]:
    # phi(n) >= sqrt(n / 2), so phi(n) <= 2 * max_degree forces n <= 8 * max_degree^2
    out = []
    for n in range(3, 8 * max_degree ** 2 + 1):
        if _totient(n) <= 2 * max_degree:
            out.append(trace_polynomial(cyclotomic(n)))
    return sorted(out, key=lambda q: (q.degree, q.coeffs))


def salem_search(degree: int = 22, limit: int | None = 1, seed: int = 1,
                 max_tries: int = 100_000):
    """Irreducible reciprocal polynomials of the given degree with one root
    outside the unit disk and |S(1)| = |S(-1)| = 1 (for degree 22 exactly the
    k3_check polynomials).

    Candidates have trace polynomial (x^2 - 4) D(x) - 1, so the trace
    polynomial is -1 at +-2. D runs first over products of cyclotomic trace
    polynomials, then over random +-1 perturbations of the squarefree ones.
    Every candidate is filtered by the exact checks.
    """
    g = degree // 2
    pool = _cyclotomic_trace_factors(g - 2)
    found: list[IntPoly] = []
    seen: set[tuple[int, ...]] = set()
    check = k3_check if degree == 22 else _salem_like

    def consider(D: IntPoly) -> bool:
        Q = IntPoly((-4, 0, 1)) * D - IntPoly((1,))
        if sturm_count(Q, -2, 2) != g - 1:
            return False
        S = from_trace_polynomial(Q)
        if S.coeffs in seen:
            return False
        seen.add(S.coeffs)
        if check(S):
            found.append(S)
            return limit is not None and len(found) >= limit
        return False

    bases = []
    for combo in _multisets_of_degree(pool, g - 2):
        D = IntPoly((1,))
        for i in combo:
            D = D * pool[i]
        if consider(D):
            return found
        if len(set(combo)) == len(combo):
            bases.append(D)
    rng = random.Random(seed)
    for _ in range(max_tries):
        c = list(rng.choice(bases).coeffs)
        for _ in range(rng.randint(1, 3)):
            c[rng.randrange(g - 2)] += rng.choice((-1, 1))
        if consider(IntPoly(c)):
            break
    return found


def _multisets_of_degree(pool: list[IntPoly], target: int, start: int = 0):
    """Non-decreasing index tuples whose pool degrees sum to target."""
    if target == 0:
        yield ()
        return
    for i in range(start, len(pool)):
        if pool[i].degree <= target:
            for rest in _multisets_of_degree(pool, target - pool[i].degree, i):
                yield (i,) + rest


def _salem_like(S: IntPoly) -> bool:
    if S(1) == 0 or S(-1) == 0 or roots_outside_unit_disk(S) != 1:
        return False
    try:
        _, N = power_of_irreducible(S)
    except ValueError:
        return False
    return N == 1
