"""``wittlab`` command-line front end.

Every command prints one JSON document on standard output.  Exit status is
0 on success, 1 on a domain error (reported as ``{"error", "detail"}``) or a
failed verification, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import InvalidRing, WittError
from .rings import ZZ, FiniteField, Polynomial, Ring, ring_from_json
from .series import (
    TruncatedSeries,
    lambda_inverse,
    lambda_map,
    series_frobenius,
    series_lth_root,
    series_verschiebung,
)
from .truncation import TruncationSet
from .witt import GhostVector, WittVector, ghost_of, witt_from_ghost


class UsageError(Exception):
    """Malformed command-line input that argparse cannot catch by itself."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# argument decoding
# ---------------------------------------------------------------------------


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from None


def parse_set(text: str) -> TruncationSet:
    text = text.strip()
    body = text[1:-1] if text[:1] in "[{" and text[-1:] in "]}" else text
    try:
        members = [int(x) for x in body.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"--S expects comma-separated integers, got {text!r}") from None
    return TruncationSet(members)


def parse_ring(text: str | None) -> Ring:
    if text is None:
        return ZZ
    data = _json_arg(text, "--ring")
    if not isinstance(data, dict):
        raise InvalidRing("a ring descriptor is a JSON object with a 'kind' field")
    return ring_from_json(data)


def parse_elements(text: str, ring: Ring) -> list:
    """A JSON array (or bare comma list) of encoded elements or element strings."""
    text = text.strip()
    data = _json_arg(text if text.startswith("[") else f"[{text}]", "element list")
    if not isinstance(data, list):
        raise UsageError("expected a list of ring elements")
    return [ring.parse(x) if isinstance(x, str) else ring.decode(x) for x in data]


def _vector_json(v, pretty: bool) -> dict:
    out = v.to_json()
    if pretty:
        out["text"] = [v.ring.format(c) for c in v.coords]
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_tables(args) -> tuple[dict, int]:
    from .tables import build_universal_tables

    t = build_universal_tables(parse_set(args.S), use_cache=not args.no_cache)
    return (t.pretty() if args.pretty else t.to_json()), 0


def cmd_eval(args) -> tuple[dict, int]:
    from .expr import evaluate

    ring, S = parse_ring(args.ring), parse_set(args.S)
    value = evaluate(args.expr, ring, S)
    kind = "witt" if isinstance(value, WittVector) else "ghost"
    return {"kind": kind, **_vector_json(value, args.pretty)}, 0


def cmd_ghost(args) -> tuple[dict, int]:
    ring, S = parse_ring(args.ring), parse_set(args.S)
    a = WittVector(ring, S, parse_elements(args.coords, ring))
    return _vector_json(ghost_of(a), args.pretty), 0


def cmd_fromghost(args) -> tuple[dict, int]:
    ring, S = parse_ring(args.ring), parse_set(args.S)
    x = GhostVector(ring, S, parse_elements(args.ghost, ring))
    return _vector_json(witt_from_ghost(x), args.pretty), 0


def _series_arg(args, ring: Ring) -> TruncatedSeries:
    coeffs = parse_elements(args.coeffs, ring)
    return TruncatedSeries(ring, len(coeffs), coeffs)


def cmd_series(args) -> tuple[dict, int]:
    ring = parse_ring(args.ring)
    op = args.series_op
    if op == "to":
        coords = parse_elements(args.coords, ring)
        out = lambda_map(WittVector(ring, TruncationSet.upto(len(coords)), coords))
    elif op == "from":
        return _vector_json(lambda_inverse(_series_arg(args, ring)), args.pretty), 0
    elif op == "frob":
        out = series_frobenius(args.k, _series_arg(args, ring))
    elif op == "versch":
        P = _series_arg(args, ring)
        out = series_verschiebung(args.k, P, args.m if args.m is not None else P.m * args.k)
    else:
        out = series_lth_root(_series_arg(args, ring), args.l)
    data = out.to_json()
    if args.pretty:
        data["text"] = repr(out)
    return data, 0


def _series_from_text(text: str, F: FiniteField, m: int) -> TruncatedSeries:
    """``1 + c_1 t + ...`` given as an integer polynomial in ``t``."""
    A = Polynomial(ZZ, ["t"])
    poly = A.parse(text)
    coeffs = [0] * (m + 1)
    for (e,), c in poly:
        if e <= m:
            coeffs[e] = c
    if coeffs[0] % F.p != 1:
        raise InvalidRing("the series must have constant term 1")
    return TruncatedSeries(F, m, [F.from_int(c) for c in coeffs[1:]])


def cmd_factorization(args) -> tuple[dict, int]:
    from .factorization import count_representable, factor_mod_tm

    if args.factor_op == "count":
        return count_representable(args.p, args.m), 0
    F = FiniteField(args.p, args.k)
    if args.q is not None:
        Q = _series_from_text(args.q, F, args.m)
    elif args.coeffs is not None:
        coeffs = parse_elements(args.coeffs, F)
        Q = TruncatedSeries(F, args.m, coeffs)
    else:
        raise UsageError("factor needs --q or --coeffs")
    fac = factor_mod_tm(Q, args.m)
    return fac.to_json(), (0 if fac.verify() else 1)


def cmd_semigroup(args) -> tuple[dict, int]:
    from .semigroup import check_perfect_isomorphism, ideal_In, ideal_power

    if args.semigroup_op == "iso":
        out = check_perfect_isomorphism(args.p, args.k, args.n)
        return out, (0 if out["bijective"] and out["inverse_ok"] else 1)
    ring = parse_ring(args.ring) if args.ring else FiniteField(args.p, args.k)
    model = ideal_power(ring, args.n) if args.semigroup_op == "ideal" else ideal_In(ring, args.n)
    return model.to_json(), 0


def cmd_galois(args) -> tuple[dict, int]:
    from .semigroup import check_galois_isomorphism

    out = check_galois_isomorphism(args.p, args.k, args.n)
    ok = all(out[k] for k in ("bijective", "multiplicative", "additive", "frobenius_intertwined"))
    return out, (0 if ok else 1)


def cmd_drw(args) -> tuple[dict, int]:
    from .drw import verify_operator_identities

    report = verify_operator_identities(parse_set(args.S), d=args.vars, samples=args.samples, seed=args.seed)
    return report, (0 if report["pass"] else 1)


def cmd_verify(args) -> tuple[dict, int]:
    from .suite import CRITERIA, run_all

    numbers = sorted(CRITERIA)
    if args.criteria:
        try:
            numbers = [int(x) for x in args.criteria.split(",") if x]
        except ValueError:
            raise UsageError("--criteria expects comma-separated integers") from None
        unknown = [n for n in numbers if n not in CRITERIA]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}; known: {sorted(CRITERIA)}")
    results = run_all(numbers)
    if args.pretty:
        for r in results:
            print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    summary = {"passed": ok, "results": [r.to_json() for r in results]}
    return summary, (0 if ok else 1)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indented, human-readable output")

    parser = _Parser(prog="wittlab", description="Exact Witt vector computations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tables", parents=[common], help="universal addition/multiplication polynomials")
    p.add_argument("--S", required=True)
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("eval", parents=[common], help="evaluate a Witt vector expression")
    p.add_argument("--ring")
    p.add_argument("--S", required=True)
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("ghost", parents=[common], help="ghost components of a Witt vector")
    p.add_argument("--ring")
    p.add_argument("--S", required=True)
    p.add_argument("--coords", required=True)
    p.set_defaults(func=cmd_ghost)

    p = sub.add_parser("fromghost", parents=[common], help="Witt vector with given ghost components")
    p.add_argument("--ring")
    p.add_argument("--S", required=True)
    p.add_argument("--ghost", required=True)
    p.set_defaults(func=cmd_fromghost)

    p = sub.add_parser("series", help="the power series model of W_{1..m}")
    ops = p.add_subparsers(dest="series_op", required=True, parser_class=_Parser)
    for name in ("to", "from", "frob", "versch", "root"):
        q = ops.add_parser(name, parents=[common])
        q.add_argument("--ring")
        if name == "to":
            q.add_argument("--coords", required=True, help="Witt coordinates a_1..a_m")
        else:
            q.add_argument("--coeffs", required=True, help="coefficients c_1..c_m of 1 + c_1 t + ...")
        if name in ("frob", "versch"):
            q.add_argument("--k", type=int, required=True)
        if name == "versch":
            q.add_argument("--m", type=int, help="output precision (default k times the input's)")
        if name == "root":
            q.add_argument("--l", type=int, required=True)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("factorization", aliases=["zannier"], help="factorization into linear factors mod t^(m+1)")
    ops = p.add_subparsers(dest="factor_op", required=True, parser_class=_Parser)
    q = ops.add_parser("factor", parents=[common])
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--k", type=int, default=1)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--q", help="integer polynomial in t with constant term 1")
    q.add_argument("--coeffs", help="JSON list of encoded coefficients c_1..c_m")
    q = ops.add_parser("count", parents=[common])
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_factorization)

    p = sub.add_parser("semigroup", help="the semigroup algebra Z[R] and its ideals")
    ops = p.add_subparsers(dest="semigroup_op", required=True, parser_class=_Parser)
    for name in ("iso", "ideal", "In"):
        q = ops.add_parser(name, parents=[common])
        q.add_argument("--p", type=int, required=name == "iso")
        q.add_argument("--k", type=int, default=1)
        q.add_argument("--n", type=int, required=True)
        if name != "iso":
            q.add_argument("--ring", help="finite ring descriptor (overrides --p/--k)")
    p.set_defaults(func=cmd_semigroup)

    p = sub.add_parser("galois", help="Galois rings as Witt vectors")
    ops = p.add_subparsers(dest="galois_op", required=True, parser_class=_Parser)
    q = ops.add_parser("iso", parents=[common])
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--k", type=int, default=1)
    q.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_galois)

    p = sub.add_parser("drw", help="de Rham-Witt form tuples")
    ops = p.add_subparsers(dest="drw_op", required=True, parser_class=_Parser)
    q = ops.add_parser("verify", parents=[common])
    q.add_argument("--S", required=True)
    q.add_argument("--vars", type=int, default=2)
    q.add_argument("--samples", type=int, default=3)
    q.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_drw)

    p = sub.add_parser("verify", help="acceptance checks")
    ops = p.add_subparsers(dest="verify_op", required=True, parser_class=_Parser)
    q = ops.add_parser("all", parents=[common])
    q.add_argument("--criteria", help="comma-separated subset to run")
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(data, pretty: bool) -> None:
    print(json.dumps(data, indent=2 if pretty else None, default=str))


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    if any(a in ("-h", "--help") for a in argv):
        try:
            parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    pretty = "--pretty" in argv
    try:
        args = parser.parse_args(argv)
        data, status = args.func(args)
    except UsageError as exc:
        _emit({"error": "UsageError", "detail": str(exc)}, pretty)
        return 2
    except WittError as exc:
        _emit(exc.to_json(), pretty)
        return 1
    _emit(data, pretty)
    return status


if __name__ == "__main__":
    sys.exit(main())
