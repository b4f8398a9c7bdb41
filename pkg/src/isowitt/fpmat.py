"""Small dense matrices over F_p as lists of rows of ints; vectors are lists.

These are the inner-loop kernels of the Witt-group search, kept free of
numpy object arrays for speed.
"""

from __future__ import annotations


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def mm(A, B, p: int) -> list[list[int]]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) % p for col in Bt] for row in A]


def mv(A, v, p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) % p for row in A]


def dot(u, v, p: int) -> int:
    return sum(a * b for a, b in zip(u, v)) % p


def bilinear(G, u, v, p: int) -> int:
    return dot(u, mv(G, v, p), p)


def rref(A, p: int):
    A = [[x % p for x in row] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    piv = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, m) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        piv.append(c)
        r += 1
        if r == m:
            break
    return A, piv


def rank(vectors, p: int) -> int:
    if not vectors:
        return 0
    return len(rref(vectors, p)[1])


def nullspace(A, n: int, p: int) -> list[list[int]]:
    """Basis vectors of {x in F_p^n : A x = 0} (A given as rows)."""
    if not A:
        return identity(n)
    R, piv = rref(A, p)
    free = [j for j in range(n) if j not in piv]
    out = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = (-R[i][f]) % p
        out.append(v)
    return out


def independent(vectors, p: int) -> list[list[int]]:
    """A basis of the span (reduced row echelon rows)."""
    if not vectors:
        return []
    R, piv = rref(vectors, p)
    return R[: len(piv)]


def coordinates(basis, targets, p: int) -> list[list[int]]:
    """Coefficients expressing each target in the independent basis vectors."""
    k = len(basis)
    n = len(basis[0]) if basis else 0
    aug = [[basis[j][i] for j in range(k)] + [t[i] for t in targets] for i in range(n)]
    R, piv = rref(aug, p)
    if piv[:k] != list(range(k)) or any(c >= k for c in piv):
        raise ValueError("targets not in the span")
    return [[R[j][k + t] for j in range(k)] for t in range(len(targets))]


def det(A, p: int) -> int:
    A = [[x % p for x in row] for row in A]
    n = len(A)
    d = 1
    for c in range(n):
        k = next((i for i in range(c, n) if A[i][c]), None)
        if k is None:
            return 0
        if k != c:
            A[c], A[k] = A[k], A[c]
            d = -d
        d = d * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv % p
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[c])]
    return d % p


def charpoly(A, p: int) -> list[int]:
    """Characteristic polynomial (constant first) via Hessenberg reduction."""
    n = len(A)
    H = [[x % p for x in row] for row in A]
    for m in range(1, n - 1):
        k = next((i for i in range(m, n) if H[i][m - 1]), None)
        if k is None:
            continue
        if k != m:
            H[k], H[m] = H[m], H[k]
            for row in H:
                row[k], row[m] = row[m], row[k]
        inv = pow(H[m][m - 1], -1, p)
        for i in range(m + 1, n):
            u = H[i][m - 1] * inv % p
            if u:
                H[i] = [(x - u * y) % p for x, y in zip(H[i], H[m])]
                for row in H:
                    row[m] = (row[m] + u * row[i]) % p
    P = [[1]]
    for m in range(1, n + 1):
        h = H[m - 1][m - 1]
        cur = _pmul([(-h) % p, 1], P[m - 1], p)
        prod = 1
        for i in range(1, m):
            prod = prod * H[m - i][m - i - 1] % p
            c = H[m - i - 1][m - 1] * prod % p
            if c:
                cur = _padd(cur, [(-c * x) % p for x in P[m - i - 1]], p)
        P.append(cur)
    return P[n]


def _pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _padd(a, b, p):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)]


def poly_at(f, A, p: int) -> list[list[int]]:
    """f(A) by Horner's rule."""
    n = len(A)
    out = [[0] * n for _ in range(n)]
    for c in reversed(f):
        out = mm(out, A, p)
        for i in range(n):
            out[i][i] = (out[i][i] + c) % p
    return out
