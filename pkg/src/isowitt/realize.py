"""Explicit even unimodular lattices with an isometry of prescribed
characteristic polynomial S, when |S(1)| = |S(-1)| = 1, plus the local
feasibility report for general S.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import linalg as la
from .exact import Place, prime_divisors, same_local_class, valuation
from .gate import GateReport, check_conditions
from .hermitian import AlgElement, companion, fixed_element, sigma, trace_form_gram
from .poly import IntPoly, is_irreducible, is_reciprocal
from .qform import QuadForm


class NotFound(RuntimeError):
    """The bounded unit search found no suitable twist (not a disproof)."""


@dataclass
class Certificate:
    gram: np.ndarray
    action: np.ndarray
    signature: tuple[int, int]
    charpoly: IntPoly
    even: bool
    unimodular: bool
    verified: bool = False
    twist: AlgElement | None = None
    transcript: list[tuple[str, bool]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "gram": [[int(x) for x in row] for row in la.to_lists(self.gram)],
            "action": [[int(x) for x in row] for row in la.to_lists(self.action)],
            "claims": {
                "even": self.even,
                "unimodular": self.unimodular,
                "signature": list(self.signature),
                "charpoly": self.charpoly.to_json(),
            },
            "twist": self.twist.to_json() if self.twist is not None else None,
            "verified": self.verified,
            "transcript": [{"check": name, "ok": ok} for name, ok in self.transcript],
        }


def _check_constructive(S: IntPoly) -> None:
    if not S.is_monic() or S.degree < 2 or S.degree % 2:
        raise ValueError("S must be monic of even degree")
    if not is_reciprocal(S):
        raise ValueError("S must be reciprocal")
    if abs(S(1)) != 1 or abs(S(-1)) != 1:
        raise ValueError(f"needs |S(1)| = |S(-1)| = 1, got S(1) = {S(1)}, S(-1) = {S(-1)}")
    if not is_irreducible(S):
        raise ValueError("S must be irreducible")


def gm_lambda(S: IntPoly) -> AlgElement:
    """lambda = (alpha - 1/alpha) alpha^(g-1) / S'(alpha); Z[alpha] is unimodular
    for tr(lambda x sigma(y)) when |S(+-1)| = 1."""
    _check_constructive(S)
    g = S.degree // 2
    a = AlgElement.generator(S)
    dS = S.derivative()
    dS_a = AlgElement(dS.coeffs, S)
    lam = (a - a.inverse()) * a ** (g - 1) * dS_a.inverse()
    if sigma(S, lam) != lam:
        raise ArithmeticError("lambda is not fixed by the involution")
    G = trace_form_gram(S, lam).gram
    if not la.is_integral(G) or abs(la.det(G)) != 1:
        raise ArithmeticError("trace form of lambda is not unimodular on Z[alpha]")
    return lam


def verify(gram, action, S: IntPoly, signature: tuple[int, int]) -> list[tuple[str, bool]]:
    """The six checks a certificate must pass."""
    G = la.qmat(gram)
    A = la.qmat(action)
    out = []
    out.append(("integral symmetric", la.is_integral(G) and la.is_symmetric(G)))
    out.append(("unimodular", abs(la.det(G)) == 1))
    out.append(("even", all(G[i, i] % 2 == 0 for i in range(G.shape[0]))))
    out.append(("signature", QuadForm(G).invariants().signature == tuple(signature)))
    out.append(("isometry", la.is_integral(A) and bool((A.T @ G @ A == G).all())))
    chi = la.charpoly(A)
    out.append(("charpoly", tuple(int(c) for c in chi) == S.coeffs))
    return out


def _norm(x: AlgElement) -> int:
    return la.det(x.multiplication_matrix())


def candidate_units(S: IntPoly, height: int = 1, products: int = 2):
    """Sigma-invariant units h(alpha + 1/alpha) of Z[alpha] with |coefficients of
    h| <= height, in a fixed order (by height, then lexicographic), followed by
    pairwise products of the nontrivial ones."""
    g = S.degree // 2
    seen = set()
    base = []

    def emit(u: AlgElement):
        key = u.coeffs
        if key in seen:
            return None
        seen.add(key)
        return u

    for c in (1, -1):
        u = emit(AlgElement.scalar(c, S))
        if u is not None:
            yield u
    vectors = sorted(
        (v for v in product(range(-height, height + 1), repeat=g) if any(v[1:])),
        key=lambda v: (max(map(abs, v)), sum(map(abs, v)), v),
    )
    for v in vectors:
        x = fixed_element(S, v)
        if abs(_norm(x)) != 1:
            continue
        u = emit(x)
        if u is not None:
            base.append(u)
            yield u
    if products >= 2:
        for i in range(len(base)):
            for j in range(i, len(base)):
                u = emit(base[i] * base[j])
                if u is not None:
                    yield u


def construct(S: IntPoly, r: int, s: int, height: int = 1, max_candidates: int = 10_000) -> Certificate:
    report = check_conditions(S, r, s)
    if not report.verdict:
        raise ValueError("signature and polynomial fail the necessary conditions")
    if not report.constructive:
        raise ValueError("construction needs |S(1)| = |S(-1)| = 1")
    lam = gm_lambda(S)
    A = companion(S)
    for k, u in enumerate(candidate_units(S, height)):
        if k >= max_candidates:
            break
        f = trace_form_gram(S, u * lam)
        if f.invariants().signature != (r, s):
            continue
        G = f.gram
        if not all(G[i, i] % 2 == 0 for i in range(G.shape[0])):
            continue
        transcript = verify(G, A, S, (r, s))
        ok = all(v for _, v in transcript)
        return Certificate(G, A, (r, s), S, even=True, unimodular=True, verified=ok,
                           twist=u * lam, transcript=transcript)
    raise NotFound(f"no unit of height <= {height} gives signature ({r}, {s})")


# ---------------------------------------------------------------- feasibility


@dataclass
class LocalCheck:
    prime: int
    ok: bool
    detail: str

    def to_json(self) -> dict:
        return {"prime": self.prime, "ok": self.ok, "detail": self.detail}


@dataclass
class FeasibilityReport:
    gate: GateReport
    local: list[LocalCheck]
    inconsistent: bool  # a local check failed although the gate passed

    @property
    def feasible(self) -> bool:
        return self.gate.verdict and all(c.ok for c in self.local)

    def to_json(self) -> dict:
        return {"gate": self.gate.to_json(), "local": [c.to_json() for c in self.local],
                "feasible": self.feasible, "inconsistent": self.inconsistent}


def feasibility_report(S: IntPoly, r: int, s: int) -> FeasibilityReport:
    gate = check_conditions(S, r, s)
    s1, sm1 = S(1), S(-1)
    local = []
    if s1 != 0 and sm1 != 0:
        primes = set(prime_divisors(abs(s1 * sm1))) | {2}
        for p in sorted(primes):
            v1, vm1 = valuation(s1, p), valuation(sm1, p)
            if p == 2:
                x = (-1) ** ((r + s) // 2) * s1 * sm1
                even = (v1 + vm1) % 2 == 0
                cls = (r + s) % 2 == 0 and any(same_local_class(x, t, Place.finite(2)) for t in (1, -3))
                local.append(LocalCheck(2, even and cls,
                                        f"v(S(1)) + v(S(-1)) = {v1 + vm1}; "
                                        f"(-1)^n S(1)S(-1) in {{1, -3}} mod squares: {cls}"))
            else:
                ok = v1 % 2 == 0 and vm1 % 2 == 0
                local.append(LocalCheck(p, ok, f"v(S(1)) = {v1}, v(S(-1)) = {vm1}"))
    inconsistent = gate.c3 and not all(c.ok for c in local)
    return FeasibilityReport(gate, local, inconsistent)
