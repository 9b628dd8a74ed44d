"""order-lab command line.

Exit codes: 0 success, 1 verdict false, 2 inconclusive, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .corpus import FIELD_FILES, field_path
from .errors import GuardExceeded, Inconclusive, InputError, OrderLabError, PreconditionError, UnsupportedError
from .factorization import AbelianGroup, davenport, elasticity_maximal, is_irreducible_in, length_set
from .field import FieldSpec, load_field
from .ideals import (
    OIdeal,
    OrderRing,
    ideal_pow,
    make_order,
    maximal_order,
    order_monogenic,
    order_z_plus,
    order_z_plus_ideal,
)
from .lattice import ZLattice
from .pseries import (
    AssociationWitness,
    TruncSeries,
    association_obstruction,
    hfd_violation_witness,
    irreducibility_cert_deg1,
)
from .serialize import canonical_json, to_jsonable
from .structure import property_report

EXIT_OK, EXIT_FALSE, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3

_POWER = re.compile(r"^(.*)\s\^(\d+)$")


def resolve_field(path: str) -> FieldSpec:
    """Load a field file; a missing path falls back to the bundled file of the same name."""
    p = Path(path)
    if not p.exists():
        bundled = {v: v for v in FIELD_FILES.values()}
        bundled.update({f"{k}.json": v for k, v in FIELD_FILES.items()})
        name = bundled.get(p.name)
        if name is None:
            raise InputError(f"no such field file: {path}")
        p = field_path(name)
    return load_field(p)


def _split_elements(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def parse_matrix(field: FieldSpec, text: str) -> list[list]:
    text = text.strip()
    if text.startswith("["):
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad basis matrix: {exc}") from exc
    else:
        rows = [r.replace(",", " ").split() for r in text.split(";") if r.strip()]
    if len(rows) != field.degree or any(len(r) != field.degree for r in rows):
        raise InputError(f"basis matrix must be {field.degree} x {field.degree}")
    return [[str(x) for x in r] for r in rows]


def parse_order(field: FieldSpec, desc: str) -> OrderRing:
    """Order from the mini-grammar.

    ``maximal``, ``Z_plus <m>``, ``Z_plus_ideal <gens> [^<e>]``, ``Z_gen <element>``
    for Z[element], and ``basis <matrix>`` with rows over the power basis, either
    JSON or ``;``-separated rows.
    """
    desc = desc.strip()
    head, _, rest = desc.partition(" ")
    rest = rest.strip()
    if head == "maximal":
        return maximal_order(field)
    if head == "Z_plus":
        try:
            m = int(rest)
        except ValueError:
            raise InputError(f"Z_plus expects an integer, got {rest!r}") from None
        return order_z_plus(field, m)
    if head == "Z_plus_ideal":
        e = 1
        match = _POWER.match(rest)
        if match:
            rest, e = match.group(1), int(match.group(2))
        gens = [field.parse(g) for g in _split_elements(rest)]
        if not gens:
            raise InputError("Z_plus_ideal needs at least one generator")
        return order_z_plus_ideal(field, ideal_pow(OIdeal.from_generators(field, gens), e))
    if head == "Z_gen":
        return order_monogenic(field, field.parse(rest))
    if head == "basis":
        rows = parse_matrix(field, rest)
        return make_order(ZLattice.from_vectors(rows), field)
    raise InputError(f"unknown order description {desc!r}")


def parse_series(field: FieldSpec, text: str, trunc: int | None) -> TruncSeries:
    """Coefficients separated by ';', each an element in polynomial or coordinate form."""
    parts = [p.strip() for p in text.split(";")]
    if not parts or any(not p for p in parts):
        raise InputError("series needs ';'-separated coefficients")
    coeffs = [field.parse(p) for p in parts]
    d = len(coeffs) - 1 if trunc is None else trunc
    return TruncSeries(coeffs, d)


def _emit(obj, args) -> None:
    if getattr(args, "table", False):
        data = to_jsonable(obj)
        if isinstance(data, dict):
            width = max((len(k) for k in data), default=0)
            for k in sorted(data):
                v = data[k]
                print(f"{k:<{width}}  {v if isinstance(v, str) else json.dumps(v, sort_keys=True)}")
            return
    print(canonical_json(obj))


# --- commands --------------------------------------------------------------------------

def cmd_props(args) -> int:
    field = resolve_field(args.field)
    R = parse_order(field, args.order)
    rep = property_report(R)
    out = {
        "order": R,
        "conductor": R.conductor,
        "conductor_factorization": [[P, e] for P, e in R.conductor.factorization],
        "associated": rep.associated.verdict,
        "ideal_preserving": rep.ideal_preserving.verdict,
        "locally_associated": rep.locally_associated.verdict,
        "conductor_radical": rep.conductor_radical,
        "quadruple": list(rep.quadruple),
    }
    _emit(out, args)
    return EXIT_OK


def cmd_factor(args) -> int:
    field = resolve_field(args.field)
    R = parse_order(field, args.order)
    if not args.element:
        raise InputError("--element is required")
    alpha = field.parse(args.element)
    verdict = is_irreducible_in(alpha, R)
    ls = length_set(alpha, R, max_len=args.bound or 16)
    out = {
        "element": alpha,
        "norm": alpha.norm(),
        "irreducible": verdict.irreducible,
        "split_witness": list(verdict.witness) if verdict.witness else None,
        "lengths": list(ls.lengths),
        "complete": ls.complete,
        "elasticity": ls.elasticity if ls.lengths else None,
        "maximal_elasticity": elasticity_maximal(field.class_group),
    }
    _emit(out, args)
    return EXIT_OK if ls.complete else EXIT_INCONCLUSIVE


def cmd_davenport(args) -> int:
    try:
        orders = [int(x) for x in args.orders]
    except ValueError:
        raise InputError("invariant factors must be integers") from None
    G = AbelianGroup.from_orders(orders)
    value = davenport(G)
    if args.json:
        print(canonical_json({"group": list(G.cyclic_orders), "davenport": value}))
    else:
        print(value)
    return EXIT_OK


def cmd_pseries_cert(args) -> int:
    field = resolve_field(args.field)
    R = parse_order(field, args.order)
    if not args.series:
        raise InputError("--series is required")
    f = parse_series(field, args.series, args.trunc)
    if args.mode == "assoc":
        res = association_obstruction(f, R)
        if isinstance(res, AssociationWitness):
            _emit({"kind": "witness", "r": res.r.coeffs, "u": res.u.coeffs}, args)
            return EXIT_OK
        _emit(
            {"kind": "certificate", "level": res.level, "nodes": res.nodes, "branches": res.branch_log},
            args,
        )
        return EXIT_OK
    if args.mode == "irred":
        cert = irreducibility_cert_deg1(f, R)
        branches = [{k: v for k, v in b.items() if k != "lattice"} for b in cert.branches]
        _emit({"verdict": cert.verdict, "branches": branches}, args)
        return EXIT_OK if cert.irreducible else EXIT_INCONCLUSIVE
    # hfd-witness: f = g0 * (a + b x) with g0 from --element and J the radical of the conductor
    if not args.element:
        raise InputError("hfd-witness mode needs --element for the constant factor g0")
    g0 = field.parse(args.element)
    if g0.is_zero():
        raise InputError("g0 must be nonzero")
    a, b = f.coeffs[0] / g0, f.coeffs[1] / g0
    J = OIdeal.unit(field)
    for P, _ in R.conductor.factorization:
        J = J * P
    w = hfd_violation_witness(f.truncate(1), TruncSeries([g0], 1), a, b, J, R)
    _emit(w, args)
    return EXIT_OK if w.all_in_order else EXIT_FALSE


def cmd_verify_paper(args) -> int:
    from .verify import run_verification

    suite = run_verification(only=args.only, fields_dir=args.fields_dir)
    if args.json:
        print(canonical_json({"passed": suite.passed, "cases": suite.cases}))
    else:
        for c in suite.cases:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<34} [{c.basis}] {c.seconds:.2f}s")
    if not suite.passed:
        print(canonical_json({"diff": suite.diff()}), file=sys.stderr)
        return EXIT_FALSE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="order-lab", description="Exact computations with orders in number fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--json", action="store_true", help="canonical JSON output (default)")
        g.add_argument("--table", action="store_true", help="aligned key/value output")

    p = sub.add_parser("props", help="associated / ideal-preserving / locally associated report")
    p.add_argument("field")
    p.add_argument("--order", required=True)
    output_flags(p)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("factor", help="irreducibility and length set of an element")
    p.add_argument("field")
    p.add_argument("--order", required=True)
    p.add_argument("--element")
    p.add_argument("--bound", type=int, help="longest factorization length explored (default 16)")
    output_flags(p)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("davenport", help="Davenport constant of a finite abelian group")
    p.add_argument("orders", nargs="+", help="cyclic orders, e.g. 3 3")
    output_flags(p)
    p.set_defaults(func=cmd_davenport)

    p = sub.add_parser("pseries-cert", help="truncated power-series certificates")
    p.add_argument("field")
    p.add_argument("--order", required=True)
    p.add_argument("--series", help="coefficients separated by ';'")
    p.add_argument("--element", help="constant factor g0 for hfd-witness mode")
    p.add_argument("--mode", choices=["assoc", "irred", "hfd-witness"], default="assoc")
    p.add_argument("--trunc", type=int)
    output_flags(p)
    p.set_defaults(func=cmd_pseries_cert)

    p = sub.add_parser("verify-paper", help="run every golden reproduction case")
    p.add_argument("--only", help="run a single named case")
    p.add_argument("--fields-dir", help="read field files from this directory instead of the bundled ones")
    output_flags(p)
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (Inconclusive, GuardExceeded) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (InputError, PreconditionError, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OrderLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
