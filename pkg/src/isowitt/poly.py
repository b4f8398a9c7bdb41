"""Integer polynomials: reciprocity, power-of-irreducible certification,
trace polynomials, Sturm counting and the count of roots outside the unit disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import gfpoly
from .exact import primes_below

IRREDUCIBILITY_PRIME_BOUND = 200
RECOMBINATION_MAX_DEGREE = 32


class NotAPower(ValueError):
    """The polynomial has two distinct irreducible factors."""


class Uncertified(ArithmeticError):
    """Irreducibility could not be decided within the configured bounds."""


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial; ``coeffs`` lists coefficients constant term first."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots_of_unity_index(cls, n: int) -> "IntPoly":
        return cyclotomic(n)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPoly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        out = IntPoly((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def reversed(self) -> "IntPoly":
        return IntPoly(reversed(self.coeffs))

    def mod(self, p: int) -> list[int]:
        return gfpoly.trim(list(self.coeffs), p)

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}{'*' + mono if mono else ''}"
            terms.append(("-" if c < 0 else "+", s))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {sg} {s}" for sg, s in terms[1:])

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


X = IntPoly((0, 1))

LEHMER = IntPoly((1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1))


# ----------------------------------------------------------- rational helpers
# Rational polynomials are lists of Fraction, constant first, trimmed.


def _q(f) -> list[Fraction]:
    c = [Fraction(x) for x in (f.coeffs if isinstance(f, IntPoly) else f)]
    while c and c[-1] == 0:
        c.pop()
    return c


def q_divmod(f, g) -> tuple[list[Fraction], list[Fraction]]:
    f, g = _q(f), _q(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    r = f[:]
    while len(r) >= len(g) and r:
        c = r[-1] / g[-1]
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] -= c * b
        r = _q(r)
    return _q(q), r


def q_monic(f) -> list[Fraction]:
    f = _q(f)
    return [c / f[-1] for c in f] if f else f


def q_gcd(f, g) -> list[Fraction]:
    f, g = _q(f), _q(g)
    while g:
        f, g = g, q_divmod(f, g)[1]
    return q_monic(f)


def q_deriv(f) -> list[Fraction]:
    return _q([i * c for i, c in enumerate(_q(f))][1:])


def q_mul(f, g) -> list[Fraction]:
    f, g = _q(f), _q(g)
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return _q(out)


def q_eval(f, x):
    acc = Fraction(0)
    for c in reversed(_q(f)):
        acc = acc * x + c
    return acc


def to_intpoly(f) -> IntPoly:
    f = _q(f)
    if any(c.denominator != 1 for c in f):
        raise ValueError("polynomial has non-integral coefficients")
    return IntPoly(int(c) for c in f)


# ----------------------------------------------------------- reciprocity


def is_reciprocal(S: IntPoly) -> bool:
    if not S.is_monic():
        raise ValueError("is_reciprocal expects a monic polynomial")
    if S.degree < 1:
        raise ValueError("degree must be at least 1")
    return S.coeffs == tuple(reversed(S.coeffs))


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial."""
    f = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            f = q_divmod(f, cyclotomic(d).coeffs)[0]
    return to_intpoly(f)


# ----------------------------------------------------------- factoring


def _squarefree_part(S: IntPoly) -> IntPoly:
    g = q_gcd(S.coeffs, q_deriv(S.coeffs))
    return to_intpoly(q_monic(q_divmod(S.coeffs, g)[0]))


def _degree_set_certifies(P: IntPoly) -> bool | None:
    """True if mod-p factor degree patterns prove P irreducible; None if undecided."""
    n = P.degree
    possible = set(range(1, n))
    for p in primes_below(IRREDUCIBILITY_PRIME_BOUND):
        f = P.mod(p)
        if gfpoly.deg(f) != n or not gfpoly.is_squarefree(f, p):
            continue
        degs = [gfpoly.deg(g) for g, _ in gfpoly.factor(f, p)]
        if len(degs) == 1:
            return True
        sums = {0}
        for d in degs:
            sums |= {s + d for s in sums}
        possible &= sums
        if not possible:
            return True
    return None


def is_irreducible(P: IntPoly) -> bool:
    """Irreducibility over Q of a monic squarefree integer polynomial."""
    if P.degree <= 1:
        return P.degree == 1
    if _degree_set_certifies(P):
        return True
    if P.degree > RECOMBINATION_MAX_DEGREE:
        raise Uncertified(f"degree {P.degree} exceeds recombination cap")
    import sympy

    t = sympy.Symbol("t")
    return sympy.Poly(list(reversed(P.coeffs)), t, domain="ZZ").is_irreducible


def power_of_irreducible(S: IntPoly) -> tuple[IntPoly, int]:
    """Write S = P^N with P monic irreducible; raises NotAPower otherwise."""
    if not S.is_monic():
        raise ValueError("power_of_irreducible expects a monic polynomial")
    if S.degree < 1:
        raise ValueError("degree must be at least 1")
    P = _squarefree_part(S)
    if S.degree % P.degree:
        raise NotAPower(f"{S} is not a power of its radical")
    N = S.degree // P.degree
    if P ** N != S:
        raise NotAPower(f"{S} is not a power of its radical")
    if not is_irreducible(P):
        raise NotAPower(f"{P} is reducible")
    return P, N


# ----------------------------------------------------------- trace polynomial


def chebyshev_sums(g: int) -> list[list[Fraction]]:
    """D_k with t^k + t^-k = D_k(t + 1/t), for k = 0..g (D_0 = 2)."""
    D = [[Fraction(2)], [Fraction(0), Fraction(1)]]
    for k in range(2, g + 1):
        D.append(_q([a - b for a, b in _zip_pad(q_mul([0, 1], D[k - 1]), D[k - 2])]))
    return D[: g + 1]


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def trace_polynomial(S: IntPoly) -> IntPoly:
    """Q of degree g with S(t) = t^g Q(t + 1/t) for reciprocal S of degree 2g."""
    if not is_reciprocal(S):
        raise ValueError("trace polynomial needs a reciprocal polynomial")
    if S.degree % 2:
        raise ValueError("trace polynomial needs even degree")
    if S(1) == 0 or S(-1) == 0:
        raise ValueError("S has a root at +1 or -1")
    g = S.degree // 2
    D = chebyshev_sums(g)
    acc = [Fraction(S.coeffs[g])]
    for k in range(1, g + 1):
        term = [S.coeffs[g + k] * c for c in D[k]]
        acc = [a + b for a, b in _zip_pad(acc, term)]
    return to_intpoly(acc)


def from_trace_polynomial(Q: IntPoly) -> IntPoly:
    """Inverse of trace_polynomial: t^g Q(t + 1/t)."""
    g = Q.degree
    out = IntPoly(())
    for k, c in enumerate(Q.coeffs):
        # t^(g-k) (t^2 + 1)^k
        out = out + IntPoly([0] * (g - k) + [1]) * (IntPoly((1, 0, 1)) ** k) * c
    return out


# ----------------------------------------------------------- Sturm


def sturm_sequence(f) -> list[list[Fraction]]:
    f = _q(f)
    seq = [f, q_deriv(f)]
    while seq[-1]:
        r = q_divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations(seq, x) -> int:
    if x == math.inf:
        return _sign_changes([s[-1] for s in seq])
    if x == -math.inf:
        return _sign_changes([s[-1] * (-1) ** (len(s) - 1) for s in seq])
    return _sign_changes([q_eval(s, x) for s in seq])


def squarefree_rational(f) -> list[Fraction]:
    f = _q(f)
    d = q_deriv(f)
    if not d:
        return f
    return q_divmod(f, q_gcd(f, d))[0]


def sturm_count(f, a=-math.inf, b=math.inf) -> int:
    """Number of distinct real roots of f in the half-open interval (a, b]."""
    f = squarefree_rational(f.coeffs if isinstance(f, IntPoly) else f)
    if len(f) <= 1:
        return 0
    a = a if a in (math.inf, -math.inf) else Fraction(a)
    b = b if b in (math.inf, -math.inf) else Fraction(b)
    if not a < b:
        return 0
    seq = sturm_sequence(f)
    return _variations(seq, a) - _variations(seq, b)


def squarefree_factorization_q(f) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm over Q: pairs (a_i, i) with f = lc * prod a_i^i."""
    f = q_monic(f)
    out = []
    if len(f) <= 1:
        return out
    c = q_gcd(f, q_deriv(f))
    w = q_divmod(f, c)[0]
    i = 1
    while len(w) > 1:
        y = q_gcd(w, c)
        z = q_divmod(w, y)[0]
        if len(z) > 1:
            out.append((q_monic(z), i))
        i += 1
        w = y
        c = q_divmod(c, y)[0]
    return out


def roots_outside_unit_disk(S: IntPoly) -> int:
    """m(S): roots with |z| > 1, with multiplicity, for reciprocal S with S(+-1) != 0.

    A pair (z, 1/z) off the unit circle corresponds to a root x = z + 1/z of the
    trace polynomial outside [-2, 2]; unit-circle pairs land inside [-2, 2].
    """
    Q = trace_polynomial(S)
    m = 0
    for a, i in squarefree_factorization_q(Q.coeffs):
        inside = sturm_count(a, -2, 2)
        m += i * (len(a) - 1 - inside)
    return m


def isolate_real_roots(f, lo, hi) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (a, b], each holding exactly one root of f in (lo, hi]."""
    f = squarefree_rational(f.coeffs if isinstance(f, IntPoly) else f)
    seq = sturm_sequence(f)

    def count(a, b):
        return _variations(seq, a) - _variations(seq, b)

    out = []
    stack = [(Fraction(lo), Fraction(hi))]
    while stack:
        a, b = stack.pop()
        n = count(a, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        stack += [(mid, b), (a, mid)]
    return sorted(out)
