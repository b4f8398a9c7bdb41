"""Command-line front end.

Exit codes: 0 positive verdict or success, 1 negative verdict (conditions
fail, no lattice exists, search found nothing), 2 bad input or budget error.
Polynomials are JSON arrays of integer strings, constant term first (or the
same list comma separated on the command line); matrices are JSON arrays of
arrays of rational strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import linalg as la
from .equiwitt import BudgetExceeded, FqForm, is_neutral
from .exact import format_rational
from .gate import check_conditions
from .hermitian import AlgElement, local_splitting, trace_form_gram
from .poly import IntPoly
from .qform import QuadForm
from .realize import NotFound, construct, feasibility_report
from .reduction import Unbounded, boundary, unimodular_witness
from .twoadic import even_criterion, spinor_norm
from .zlattice import GLattice, discriminant_form, lattice_report


class InputError(ValueError):
    pass


def _load(text: str):
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return [x.strip() for x in text.split(",") if x.strip()]


def parse_poly(text: str) -> IntPoly:
    data = _load(text)
    try:
        coeffs = [int(str(c)) for c in data]
    except (TypeError, ValueError):
        raise InputError("polynomial must be a list of integers") from None
    S = IntPoly(tuple(coeffs))
    if S.degree < 1 or not S.is_monic():
        raise InputError("polynomial must be monic of positive degree")
    return S


def parse_matrix(text: str):
    data = _load(text)
    try:
        rows = [[Fraction(str(x)) for x in row] for row in data]
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError("matrix must be a list of lists of rationals") from None
    if any(len(r) != len(rows) for r in rows):
        raise InputError("matrix must be square")
    return la.qmat(rows) if rows else la.zeros(0, 0)


def parse_signature(text: str) -> tuple[int, int]:
    try:
        r, s = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError("signature must be r,s") from None
    return r, s


def _matrix_json(M) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in la.to_lists(M)]


def _action(args, n):
    return parse_matrix(args.action) if args.action else la.identity(n)


# Each handler returns (exit code, report dict).


def cmd_gate(args):
    S = parse_poly(args.poly)
    r, s = parse_signature(args.signature)
    rep = check_conditions(S, r, s)
    return (0 if rep.verdict else 1), {"poly": S.to_json(), "signature": [r, s], **rep.to_json()}


def cmd_traceform(args):
    S = parse_poly(args.poly)
    lam = parse_poly_any(args.twist) if args.twist else ["1"]
    f = trace_form_gram(S, AlgElement([Fraction(str(c)) for c in lam], S))
    return 0, {"gram": _matrix_json(f.gram), "invariants": f.invariants().to_json()}


def parse_poly_any(text: str) -> list:
    data = _load(text)
    if isinstance(data, (int, str)):
        data = [data]
    if not isinstance(data, list):
        raise InputError("twist must be a list of rationals")
    return data


def cmd_splitting(args):
    S = parse_poly(args.poly)
    return 0, local_splitting(S, args.prime).to_json()


def cmd_lattice(args):
    G = parse_matrix(args.gram)
    n = G.shape[0]
    basis = parse_matrix(args.basis) if args.basis else None
    L = GLattice(QuadForm(G), basis, _action(args, n))
    rep = lattice_report(L)
    out = {"stable": L.is_stable(), **rep.to_json()}
    if rep.integral:
        out["discriminant_form"] = discriminant_form(L).to_json()
    return 0, out


def cmd_witt(args):
    G = parse_matrix(args.gram)
    A = _action(args, G.shape[0])
    V = FqForm(args.prime, G, A)
    v = is_neutral(V, args.budget, args.threads)
    return (0 if v.neutral else 1), {"form": V.to_json(), **v.to_json()}


def cmd_boundary(args):
    G = parse_matrix(args.gram)
    A = _action(args, G.shape[0])
    bc = boundary(QuadForm(G), A, args.prime)
    v = is_neutral(bc.form, args.budget, args.threads)
    return 0, {**bc.to_json(), "neutral": v.neutral}


def cmd_unimodular(args):
    G = parse_matrix(args.gram)
    A = _action(args, G.shape[0])
    L = unimodular_witness(QuadForm(G), A, args.prime, args.budget, args.threads)
    if L is None:
        return 1, {"result": "NoneExists"}
    return 0, {"result": "witness", "basis": _matrix_json(L.basis), "gram": _matrix_json(L.gram())}


def cmd_spinor(args):
    G = parse_matrix(args.gram)
    sn = spinor_norm(QuadForm(G), parse_matrix(args.isometry))
    return 0, {"spinor_norm": sn.value, "v2": sn.v2()}


def cmd_even_criterion(args):
    G = parse_matrix(args.gram)
    A = _action(args, G.shape[0])
    v = even_criterion(QuadForm(G), A, args.budget)
    return (0 if v.verdict else 1), v.to_json()


def cmd_realize(args):
    S = parse_poly(args.poly)
    r, s = parse_signature(args.signature)
    try:
        cert = construct(S, r, s, height=args.unit_height)
    except NotFound as e:
        return 1, {"result": "NotFound", "detail": str(e)}
    return (0 if cert.verified else 1), cert.to_json()


def cmd_feasibility(args):
    S = parse_poly(args.poly)
    r, s = parse_signature(args.signature)
    rep = feasibility_report(S, r, s)
    return (0 if rep.feasible else 1), rep.to_json()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="isowitt", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="also write the report as JSON")
    common.add_argument("--budget", type=int, default=None,
                        help="enumeration cap for Witt searches (default $ISOWITT_BUDGET or 10^7)")
    common.add_argument("--threads", type=int, default=1, help="search threads (default 1)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, *opts):
        p = sub.add_parser(name, parents=[common])
        for flag, kw in opts:
            p.add_argument(flag, **kw)
        p.set_defaults(func=fn)

    poly = ("--poly", {"required": True, "help": "coefficients, constant first"})
    sig = ("--signature", {"required": True, "help": "r,s"})
    gram = ("--gram", {"required": True})
    action = ("--action", {"default": None})
    prime = ("--prime", {"type": int, "required": True})
    add("gate", cmd_gate, poly, sig)
    add("traceform", cmd_traceform, poly, ("--twist", {"default": None,
                                                       "help": "lambda in the power basis"}))
    add("splitting", cmd_splitting, poly, prime)
    add("lattice", cmd_lattice, gram, action, ("--basis", {"default": None}))
    add("witt", cmd_witt, gram, action, prime)
    add("boundary", cmd_boundary, gram, action, prime)
    add("unimodular", cmd_unimodular, gram, action, prime)
    add("spinor", cmd_spinor, gram, ("--isometry", {"required": True}))
    add("even-criterion", cmd_even_criterion, gram, action)
    add("realize", cmd_realize, poly, sig, ("--unit-height", {"type": int, "default": 1}))
    add("feasibility", cmd_feasibility, poly, sig)
    return ap


def _print_human(report, indent: str = "") -> None:
    for k, v in report.items():
        if isinstance(v, dict):
            print(f"{indent}{k}:")
            _print_human(v, indent + "  ")
        else:
            print(f"{indent}{k}: {json.dumps(v)}")


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        code, report = args.func(args)
    except (InputError, ValueError, Unbounded, ArithmeticError, BudgetExceeded, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _print_human(report)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
