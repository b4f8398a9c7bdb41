"""Rational scalars: valuations, square classes, local squares, Hilbert symbols."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

TRIAL_DIVISION_BOUND = 1 << 16


class UncertifiedFactorization(ArithmeticError):
    """Raised when a squarefree part cannot be certified within the trial bound."""


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: ``p is None`` for the real place, else the prime p."""

    p: int | None = None

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls(p)

    @property
    def is_real(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "real" if self.p is None else str(self.p)


REAL = Place.real()


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def format_rational(x) -> str:
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ------------------------------------------------------------ primes


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller--Rabin with fixed bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def primes_below(n: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * max(n, 2)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, n, i)))
    return tuple(i for i in range(n) if sieve[i])


def factor_small(n: int, bound: int = TRIAL_DIVISION_BOUND) -> tuple[dict[int, int], int]:
    """Trial-divide |n| by primes below ``bound``; returns (factors, cofactor)."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for q in primes_below(bound):
        if q * q > n:
            break
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    if 1 < n < bound * bound:
        out[n] = out.get(n, 0) + 1
        n = 1
    return out, n


def prime_divisors(n: int, bound: int = TRIAL_DIVISION_BOUND) -> list[int]:
    """Primes dividing the nonzero integer n (cofactor must be certified prime)."""
    fac, rest = factor_small(n, bound)
    if rest != 1:
        if is_prime(rest):
            fac[rest] = 1
        else:
            raise UncertifiedFactorization(f"cannot factor cofactor {rest}")
    return sorted(fac)


# ------------------------------------------------------------ valuations


def valuation(x, p: int) -> int | float:
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    x = as_fraction(x)
    if x == 0:
        return math.inf
    v = 0
    a, b = x.numerator, x.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def unit_part(x, p: int) -> Fraction:
    x = as_fraction(x)
    return x / Fraction(p) ** valuation(x, p)


def _squarefree_int(n: int, bound: int = TRIAL_DIVISION_BOUND) -> int:
    sign = -1 if n < 0 else 1
    fac, rest = factor_small(n, bound)
    core = 1
    for q, e in fac.items():
        if e % 2:
            core *= q
    if rest != 1:
        r = math.isqrt(rest)
        if r * r == rest:
            pass
        elif is_prime(rest):
            core *= rest
        else:
            raise UncertifiedFactorization(
                f"cofactor {rest} has no prime factor below {bound} and is composite"
            )
    return sign * core


def square_class(x, bound: int = TRIAL_DIVISION_BOUND) -> int:
    """Squarefree integer r with x/r a rational square."""
    x = as_fraction(x)
    if x == 0:
        raise ValueError("square class of zero")
    return _squarefree_int(x.numerator * x.denominator, bound)


def is_square_int(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _int_rep(x) -> int:
    """Integer in the same square class as the nonzero rational x."""
    x = as_fraction(x)
    if x == 0:
        raise ValueError("zero has no square class")
    return x.numerator * x.denominator


def is_local_square(x, v: Place) -> bool:
    n = _int_rep(x)
    if v.is_real:
        return n > 0
    p = v.p
    e = valuation(n, p)
    if e % 2:
        return False
    u = n // p ** e
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


def same_local_class(x, y, v: Place) -> bool:
    return is_local_square(_int_rep(x) * _int_rep(y), v)


def hilbert_symbol(a, b, v: Place) -> int:
    """Hilbert symbol (a, b)_v in {+1, -1}."""
    a, b = _int_rep(a), _int_rep(b)
    if v.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = v.p
    al, be = valuation(a, p), valuation(b, p)
    u, w = a // p ** al, b // p ** be
    if p == 2:
        eps = lambda z: ((z - 1) // 2) % 2
        omega = lambda z: ((z * z - 1) // 8) % 2
        e = eps(u) * eps(w) + al * omega(w) + be * omega(u)
        return -1 if e % 2 else 1
    s = (-1) ** ((al * be * ((p - 1) // 2)) % 2)
    if be % 2:
        s *= legendre(u, p)
    if al % 2:
        s *= legendre(w, p)
    return s


def local_square_class_reps(v: Place) -> list[int]:
    """Representatives of Q_v^x / (Q_v^x)^2."""
    if v.is_real:
        return [1, -1]
    p = v.p
    if p == 2:
        return [1, 3, 5, 7, 2, 6, 10, 14]
    n = next(a for a in range(2, p) if legendre(a, p) == -1)
    return [1, n, p, n * p]
