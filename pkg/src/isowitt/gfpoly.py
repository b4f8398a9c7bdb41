"""Dense polynomials over F_p (lists of ints, constant term first) and factoring."""

from __future__ import annotations

from itertools import product

from .linalg import nullspace_mod

Poly = list  # list[int], constant first, no trailing zeros


def trim(f, p: int) -> list[int]:
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f) -> int:
    return len(f) - 1


def monic(f, p: int) -> list[int]:
    f = trim(f, p)
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def add(f, g, p):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], p)


def sub(f, g, p):
    return add(f, [-c for c in g], p)


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out, p)


def divmod_(f, g, p):
    f = trim(f, p)
    g = trim(g, p)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    r = f[:]
    while len(r) >= len(g):
        c = r[-1] * inv % p
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = (r[k + i] - c * b) % p
        r = trim(r, p)
    return trim(q, p), r


def rem(f, g, p):
    return divmod_(f, g, p)[1]


def gcd(f, g, p):
    f, g = trim(f, p), trim(g, p)
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def deriv(f, p):
    return trim([i * c for i, c in enumerate(f)][1:], p)


def powmod(f, e: int, m, p):
    result = [1]
    base = rem(f, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        base = rem(mul(base, base, p), m, p)
        e >>= 1
    return result


def evaluate(f, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def reciprocal(f, p):
    """Monic reciprocal f*(t) = t^deg f(1/t) / f(0)."""
    f = trim(f, p)
    if not f or f[0] == 0:
        raise ValueError("reciprocal of a polynomial divisible by t")
    return monic(list(reversed(f)), p)


def _pth_root(f, p):
    return trim([f[i] for i in range(0, len(f), p)], p)


def squarefree_decomposition(f, p) -> list[tuple[list[int], int]]:
    """Pairs (g, e) with f = lc * prod g^e and each g squarefree, pairwise coprime."""
    f = monic(f, p)
    if len(f) <= 1:
        return []
    out: list[tuple[list[int], int]] = []
    d = deriv(f, p)
    if not d:
        return [(g, e * p) for g, e in squarefree_decomposition(_pth_root(f, p), p)]
    c = gcd(f, d, p)
    w = divmod_(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if len(c) > 1:
        out += [(g, e * p) for g, e in squarefree_decomposition(_pth_root(c, p), p)]
    return out


def _berlekamp(f, p) -> list[list[int]]:
    """Irreducible factors of a monic squarefree f over F_p."""
    n = deg(f)
    if n <= 1:
        return [f]
    rows = []
    xp = powmod([0, 1], p, f, p)
    cur = [1]
    for _ in range(n):
        rows.append(cur + [0] * (n - len(cur)))
        cur = rem(mul(cur, xp, p), f, p)
    import numpy as np

    Q = np.array(rows, dtype=object)
    for i in range(n):
        Q[i, i] -= 1
    basis = nullspace_mod(Q.T.copy(), p)
    k = basis.shape[1]
    if k == 1:
        return [f]
    factors = [f]
    for j in range(k):
        v = trim(list(basis[:, j]), p)
        if len(v) <= 1:
            continue
        new = []
        for g in factors:
            if deg(g) <= 1:
                new.append(g)
                continue
            for s in range(p):
                h = gcd(g, sub(v, [s], p), p)
                if 0 < deg(h) < deg(g):
                    new.append(h)
                    g = divmod_(g, h, p)[0]
            new.append(g)
        factors = [monic(g, p) for g in new if deg(g) >= 1]
        if len(factors) == k:
            break
    return factors


def factor(f, p) -> list[tuple[list[int], int]]:
    """Monic irreducible factors of f over F_p with multiplicities, sorted."""
    out: dict[tuple, int] = {}
    for g, e in squarefree_decomposition(f, p):
        for h in _berlekamp(g, p):
            key = tuple(monic(h, p))
            out[key] = out.get(key, 0) + e
    return sorted(((list(k), e) for k, e in out.items()), key=lambda t: (len(t[0]), t[0]))


def is_squarefree(f, p) -> bool:
    f = trim(f, p)
    return deg(gcd(f, deriv(f, p), p)) == 0 if deriv(f, p) else deg(f) <= 0
