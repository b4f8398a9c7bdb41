"""The algebra E = Q[t]/(S) with the involution alpha -> 1/alpha, trace forms
b_lambda(x, y) = tr(lambda x sigma(y)), local splitting of E over its fixed
algebra at a prime, and the parity invariants theta.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import gfpoly
from . import linalg as la
from .exact import REAL, Place, as_fraction, is_prime, legendre, valuation
from .poly import (
    IntPoly,
    _q,
    is_reciprocal,
    power_of_irreducible,
    q_divmod,
    q_gcd,
    q_mul,
    trace_polynomial,
)
from .qform import DegenerateForm, QuadForm


class Unsupported(NotImplementedError):
    """The requested invariant has no closed formula in this setting."""


# ----------------------------------------------------------- algebra elements


@dataclass(frozen=True)
class AlgElement:
    """Element of Q[t]/(S) in the power basis 1, alpha, ..., alpha^(n-1)."""

    coeffs: tuple[Fraction, ...]
    modulus: IntPoly

    def __init__(self, coeffs: Iterable, modulus: IntPoly):
        if not modulus.is_monic():
            raise ValueError("modulus must be monic")
        c = [as_fraction(x) for x in coeffs]
        if len(c) >= len(modulus.coeffs):
            c = q_divmod(c, modulus.coeffs)[1]
        n = modulus.degree
        c = list(c) + [Fraction(0)] * (n - len(c))
        object.__setattr__(self, "coeffs", tuple(c[:n]))
        object.__setattr__(self, "modulus", modulus)

    @classmethod
    def scalar(cls, x, S: IntPoly) -> "AlgElement":
        return cls([x], S)

    @classmethod
    def generator(cls, S: IntPoly) -> "AlgElement":
        return cls([0, 1], S)

    def _wrap(self, other) -> "AlgElement":
        if isinstance(other, AlgElement):
            if other.modulus != self.modulus:
                raise ValueError("elements of different algebras")
            return other
        return AlgElement([other], self.modulus)

    def __add__(self, other) -> "AlgElement":
        o = self._wrap(other)
        return AlgElement([a + b for a, b in zip(self.coeffs, o.coeffs)], self.modulus)

    __radd__ = __add__

    def __neg__(self) -> "AlgElement":
        return AlgElement([-a for a in self.coeffs], self.modulus)

    def __sub__(self, other) -> "AlgElement":
        return self + (-self._wrap(other))

    def __rsub__(self, other) -> "AlgElement":
        return self._wrap(other) - self

    def __mul__(self, other) -> "AlgElement":
        o = self._wrap(other)
        return AlgElement(q_mul(self.coeffs, o.coeffs), self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "AlgElement":
        if e < 0:
            return self.inverse() ** (-e)
        out = AlgElement([1], self.modulus)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def inverse(self) -> "AlgElement":
        """Inverse via the extended Euclidean algorithm over Q."""
        r0, r1 = _q(self.modulus.coeffs), _q(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while r1:
            qt, rr = q_divmod(r0, r1)
            r0, r1 = r1, rr
            s0, s1 = s1, _q(_sub(s0, q_mul(qt, s1)))
        if len(r0) != 1:
            raise ZeroDivisionError("element is not invertible")
        return AlgElement([c / r0[0] for c in s0], self.modulus)

    def is_invertible(self) -> bool:
        return len(q_gcd(self.modulus.coeffs, self.coeffs)) == 1 if not self.is_zero() else False

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def multiplication_matrix(self) -> np.ndarray:
        """Matrix of y -> self*y on the power basis (columns are images)."""
        n = self.modulus.degree
        cols = []
        for j in range(n):
            e = [0] * j + [1]
            cols.append(list((self * AlgElement(e, self.modulus)).coeffs))
        return la.qmat([[cols[j][i] for j in range(n)] for i in range(n)])

    def to_json(self) -> list[str]:
        from .exact import format_rational

        return [format_rational(c) for c in self.coeffs]


def _sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _check_reciprocal(S: IntPoly) -> None:
    if not is_reciprocal(S):
        raise ValueError("the involution needs a reciprocal polynomial")


def sigma(S: IntPoly, x: AlgElement) -> AlgElement:
    """Image of x under the ring involution alpha -> alpha^(-1)."""
    _check_reciprocal(S)
    if x.modulus != S:
        x = AlgElement(x.coeffs, S)
    ainv = AlgElement.generator(S).inverse()
    acc = AlgElement([0], S)
    for c in reversed(x.coeffs):
        acc = acc * ainv + c
    return acc


def power_sums(S: IntPoly, count: int) -> list[Fraction]:
    """Newton power sums p_0 .. p_(count-1) of the roots of monic S."""
    n = S.degree
    # e_k via S = t^n - e_1 t^(n-1) + e_2 t^(n-2) ...
    a = [Fraction(S.coeffs[n - k]) for k in range(n + 1)]  # a_k coefficient of t^(n-k)
    p = [Fraction(n)]
    for k in range(1, count):
        s = -k * a[k] if k <= n else Fraction(0)
        for i in range(1, min(k, n + 1)):
            s -= a[i] * p[k - i]
        p.append(s)
    return p[:count]


def trace(S: IntPoly, x: AlgElement) -> Fraction:
    if x.modulus != S:
        x = AlgElement(x.coeffs, S)
    p = power_sums(S, S.degree)
    return sum((c * pk for c, pk in zip(x.coeffs, p)), Fraction(0))


def trace_form_gram(S: IntPoly, lam: AlgElement) -> QuadForm:
    """Gram matrix tr(lambda alpha^i sigma(alpha^j)) on the power basis."""
    _check_reciprocal(S)
    if lam.modulus != S:
        lam = AlgElement(lam.coeffs, S)
    if sigma(S, lam) != lam:
        raise ValueError("lambda is not fixed by the involution")
    if not lam.is_invertible():
        raise ValueError("lambda is not invertible")
    n = S.degree
    a = AlgElement.generator(S)
    ainv = a.inverse()
    # G_ij = tr(lambda alpha^(i-j)) depends only on i - j
    vals = {}
    pos = lam
    neg = lam
    vals[0] = trace(S, lam)
    for k in range(1, n):
        pos = pos * a
        neg = neg * ainv
        vals[k] = trace(S, pos)
        vals[-k] = trace(S, neg)
    G = la.qmat([[vals[i - j] for j in range(n)] for i in range(n)])
    try:
        return QuadForm(G)
    except DegenerateForm:
        raise DegenerateForm("trace form is degenerate (S is not squarefree)") from None


def companion(S: IntPoly) -> np.ndarray:
    """Matrix of multiplication by alpha on the power basis."""
    return AlgElement.generator(S).multiplication_matrix()


def fixed_element(S: IntPoly, x_poly: Sequence) -> AlgElement:
    """The sigma-invariant element h(alpha + 1/alpha) for a polynomial h."""
    a = AlgElement.generator(S)
    u = a + a.inverse()
    acc = AlgElement([0], S)
    for c in reversed(list(x_poly)):
        acc = acc * u + as_fraction(c)
    return acc


# ----------------------------------------------------------- local splitting


@dataclass(frozen=True)
class LocalPlace:
    """A place of the fixed algebra over p and the behaviour of E there."""

    type: str  # split, unramified, ramified_plus, ramified_minus, ramified
    residue_degree: int  # degree of the residue field of the fixed-algebra place over F_p
    ramification: int  # ramification index of the fixed-algebra place over Q_p
    certified: bool
    factor: tuple[int, ...] = ()  # the mod-p factor of the trace polynomial
    p: int | None = None

    def to_json(self) -> dict:
        return {
            "type": self.type,
            "residue_degree": self.residue_degree,
            "ramification": self.ramification,
            "certified": self.certified,
            "factor": list(self.factor),
        }


@dataclass(frozen=True)
class SplittingData:
    prime: int
    places: tuple[LocalPlace, ...]
    certified: bool

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "certified": self.certified,
            "places": [w.to_json() for w in self.places],
        }


def is_p_maximal(f: IntPoly, p: int) -> bool:
    """Dedekind criterion: is Z[x]/(f) maximal at p?"""
    fac = gfpoly.factor(f.mod(p), p)
    g = [1]
    h = [1]
    for gi, e in fac:
        g = _zmul(g, gi)
        for _ in range(e - 1):
            h = _zmul(h, gi)
    gh = _zmul(g, h)
    diff = [(f.coeffs[i] if i < len(f.coeffs) else 0) - (gh[i] if i < len(gh) else 0)
            for i in range(max(len(f.coeffs), len(gh)))]
    assert all(c % p == 0 for c in diff)
    F = gfpoly.trim([c // p for c in diff], p)
    d = gfpoly.gcd(gfpoly.gcd(F, gfpoly.trim(g, p), p), gfpoly.trim(h, p), p) if F else gfpoly.gcd(
        gfpoly.trim(g, p), gfpoly.trim(h, p), p)
    return gfpoly.deg(d) == 0


def _zmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _lift_to_t(gbar: list[int], p: int) -> list[int]:
    """t^d g(t + 1/t) mod p for g of degree d."""
    d = gfpoly.deg(gbar)
    out: list[int] = []
    u_pow = [1]  # (t^2 + 1)^k
    for k, c in enumerate(gbar):
        term = [0] * (d - k) + u_pow
        out = gfpoly.add(out, [c * x for x in term], p)
        u_pow = gfpoly.mul(u_pow, [1, 0, 1], p)
    return out


def local_splitting(S: IntPoly, p: int) -> SplittingData:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    P, _ = power_of_irreducible(S)
    _check_reciprocal(P)
    if P.degree % 2:
        raise ValueError("local splitting needs a nonlinear reciprocal irreducible factor")
    Q = trace_polynomial(P)
    certified = is_p_maximal(P, p) and is_p_maximal(Q, p)
    pfac = gfpoly.factor(P.mod(p), p)
    places = []
    for gbar, e0 in gfpoly.factor(Q.mod(p), p):
        d = gfpoly.deg(gbar)
        G = _lift_to_t(gbar, p)
        hs = [(h, e) for h, e in pfac if gfpoly.deg(gfpoly.gcd(h, G, p)) > 0]
        if len(hs) >= 2:
            kind = "split"
        elif len(hs) == 1 and gfpoly.deg(hs[0][0]) == 2 * d:
            kind = "unramified"
        else:
            h = hs[0][0]
            if p == 2:
                kind = "ramified"
            elif h == [p - 1, 1]:
                kind = "ramified_plus"
            elif h == [1, 1]:
                kind = "ramified_minus"
            else:
                # residue of alpha is not +-1: cannot be a ramified place
                kind = "ramified"
                certified = False
        places.append(LocalPlace(kind, d, e0, certified, tuple(gbar), p))
    places = tuple(LocalPlace(w.type, w.residue_degree, w.ramification, certified, w.factor, p)
                   for w in places)
    return SplittingData(p, places, certified)


def residue_degree(place: LocalPlace) -> int:
    return place.residue_degree


# ----------------------------------------------------------- theta


def _is_square_in_residue_field(value, p: int, modulus: Sequence[int] | None) -> bool:
    """Euler criterion in F_p[x]/(modulus) (F_p when modulus is None)."""
    if modulus is None or gfpoly.deg(list(modulus)) <= 1:
        if modulus is not None and gfpoly.deg(list(modulus)) == 1:
            # evaluate at the root of the linear modulus
            m = gfpoly.monic(list(modulus), p)
            root = (-m[0]) % p
            v = gfpoly.evaluate(gfpoly.trim(list(value) if isinstance(value, (list, tuple)) else [value], p), root, p)
        else:
            v = int(value[0] if isinstance(value, (list, tuple)) else value) % p
        if v == 0:
            raise ValueError("residue must be a unit")
        return legendre(v, p) == 1
    m = gfpoly.monic(list(modulus), p)
    q = p ** gfpoly.deg(m)
    v = gfpoly.trim(list(value) if isinstance(value, (list, tuple)) else [value], p)
    v = gfpoly.rem(v, m, p)
    if not v:
        raise ValueError("residue must be a unit")
    return gfpoly.powmod(v, (q - 1) // 2, m, p) == [1]


def theta(place, value, residue_modulus: Sequence[int] | None = None, p: int | None = None) -> int:
    """Parity invariant of a local lambda at a place where E is a field.

    place: "real" (or REAL), or a LocalPlace / place type string.
    value: real place -> the real value of lambda (its sign is used);
           unramified -> the valuation of lambda;
           ramified (odd p) -> residue of the unit part, as an int or a
           polynomial over F_p reduced modulo ``residue_modulus``.
    """
    if place == "real" or place == REAL:
        if value == 0:
            raise ValueError("lambda must be nonzero")
        return 1 if value < 0 else 0
    if isinstance(place, LocalPlace):
        kind, p = place.type, place.p
        if residue_modulus is None and place.factor:
            residue_modulus = place.factor
    else:
        kind = str(place)
    if kind == "split":
        raise ValueError("theta is only defined where E is a field")
    if kind == "unramified":
        return int(value) % 2
    if kind in ("ramified_plus", "ramified_minus", "ramified"):
        if p == 2 or (kind == "ramified" and p is None):
            raise Unsupported("no closed formula for theta at ramified places over 2")
        if p is None:
            raise ValueError("ramified theta needs the residue characteristic")
        return 0 if _is_square_in_residue_field(value, p, residue_modulus) else 1
    raise ValueError(f"unknown place type {kind!r}")


def ramified_place(p: int, sign: int = 1, residue_modulus: Sequence[int] = ()) -> LocalPlace:
    """Convenience descriptor of a ramified place over the odd prime p."""
    if p == 2:
        return LocalPlace("ramified", 1, 1, True, tuple(residue_modulus), 2)
    kind = "ramified_plus" if sign == 1 else "ramified_minus"
    deg = max(len(residue_modulus) - 1, 1)
    return LocalPlace(kind, deg, 1, True, tuple(residue_modulus), p)


@dataclass
class ThetaVector:
    entries: list = field(default_factory=list)  # (descriptor, value in {0, 1})

    def add(self, descriptor, value: int) -> None:
        self.entries.append((descriptor, int(value) % 2))


def local_global_check(thetas) -> bool:
    """True iff the local parities sum to zero in Z/2."""
    if isinstance(thetas, ThetaVector):
        values = [v for _, v in thetas.entries]
    else:
        values = [v[1] if isinstance(v, tuple) else v for v in thetas]
    return sum(int(v) for v in values) % 2 == 0
