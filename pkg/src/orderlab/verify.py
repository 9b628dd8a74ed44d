"""Reproduction harness: named golden cases computed from the bundled fields.

Expected values live in ``data/golden.json`` together with a ``basis`` tag
saying where each value comes from (``reference`` for values quoted from the
worked examples, ``derived`` for values fixed by an independent computation,
``trivial`` for consistency checks).
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from .corpus import generate_corpus, load_fields
from .errors import InputError, InvariantViolation
from .factorization import AbelianGroup, davenport, hfd_evidence
from .ideals import (
    OIdeal,
    ideal_divisors,
    ideal_intersect,
    ideal_pow,
    ideal_sum,
    intermediate_order,
    order_z_plus,
    order_z_plus_ideal,
    principal_ideal,
    split_prime,
)
from .pseries import (
    AssociationWitness,
    TruncSeries,
    association_obstruction,
    hfd_violation_witness,
    irreducibility_cert_deg1,
)
from .serialize import to_jsonable
from .structure import check_inheritance, class_number_of_order, is_associated, property_report
from .units import coset_of, coset_reps, unit_index


def load_golden(path: str | Path | None = None) -> dict[str, dict]:
    if path is None:
        text = (resources.files("orderlab") / "data" / "golden.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)["cases"]


class Context:
    """Fields, the cubic example orders and the corpus, built lazily and shared by cases."""

    def __init__(self, fields_dir: str | Path | None = None):
        self.fields = load_fields(fields_dir)

    @cached_property
    def cubic(self):
        K = self.fields["cubic"]
        Q, P = split_prime(3, K)
        return K, Q, P, order_z_plus_ideal(K, ideal_pow(P, 2)), order_z_plus_ideal(K, P)

    @cached_property
    def corpus(self):
        return generate_corpus(fields=self.fields)

    @cached_property
    def reports(self):
        return [(e, property_report(e.order)) for e in self.corpus]


# --- cases --------------------------------------------------------------------------

def case_z5sqrt2(ctx: Context) -> dict:
    R = order_z_plus(ctx.fields["Q-sqrt2"], 5)
    rep = property_report(R)
    c = rep.locally_associated.certificate
    return {
        "units_maximal_mod_I": c["units_maximal_mod_I"],
        "units_order_mod_I": c["units_order_mod_I"],
        "unit_index": c["unit_index"],
        "ideal_preserving": rep.ideal_preserving.verdict,
        "locally_associated": rep.locally_associated.verdict,
    }


def case_z2sqrt2(ctx: Context) -> dict:
    K = ctx.fields["Q-sqrt2"]
    R = order_z_plus(K, 2)
    rep = property_report(R)
    cert = rep.ideal_preserving.certificate
    P, sq = cert["pair"]
    root = principal_ideal(K.gen)
    return {
        "ideal_preserving": rep.ideal_preserving.verdict,
        "witness_is_square_of_root": cert["kind"] == "square" and P == root and sq == ideal_pow(root, 2),
        "locally_associated": rep.locally_associated.verdict,
        "units_maximal_mod_I": rep.locally_associated.certificate["units_maximal_mod_I"],
    }


def case_cubic_split(ctx: Context) -> list[list[str]]:
    K, Q, P, _, _ = ctx.cubic
    primes = split_prime(3, K)
    if ideal_pow(Q, 1) * P != OIdeal.from_generators(K, [K.rational(3)]):
        raise InvariantViolation("prime factors of 3 do not multiply back to 3O")
    out = []
    for pr in primes:
        p, g = pr.two_gens
        out.append([str(p), str(g)])
    return sorted(out)


def case_cubic_conductor(ctx: Context) -> dict:
    K, _, P, R, _ = ctx.cubic
    beta = K.parse("2-4a+a^2")
    sq = ideal_pow(P, 2)
    return {
        "square_equals_principal": sq == principal_ideal(beta),
        "conductor_is_square": R.conductor == sq,
        "generator_norm": int(beta.norm()),
    }


def case_cubic_associated(ctx: Context) -> bool:
    return is_associated(ctx.cubic[3]).verdict


def case_cubic_unit_indices(ctx: Context) -> dict:
    _, _, _, R, R1 = ctx.cubic
    return {"R1": unit_index(R1), "R": unit_index(R)}


def case_cubic_residue_field(ctx: Context) -> int:
    _, _, P, _, _ = ctx.cubic
    return P.norm


def case_obstruction(ctx: Context) -> dict:
    K, _, _, R, _ = ctx.cubic
    res = association_obstruction(TruncSeries([K.rational(3), K.gen], 1), R)
    if isinstance(res, AssociationWitness):
        return {"kind": "witness"}
    return {"kind": "certificate", "level": res.level}


def branch_class(g0, R, three) -> int | None:
    """k in {-1, 0, 1} with g0 = 3 * eps^(4k) up to U(R), or None if g0 is not associated to 3."""
    v = g0 / three
    if abs(v.norm()) != 1 or not R.field.maximal_order.contains(v):
        return None
    reps = coset_reps(R)
    _, b = reps.exponents[coset_of(v, R)]
    if b % 4:
        return None
    k = b // 4
    return k if k <= reps.power_index // 8 else k - reps.power_index // 4


def case_irreducibility(ctx: Context) -> dict:
    K, _, _, R, _ = ctx.cubic
    f = TruncSeries([K.parse("6-12a+3a^2"), K.parse("1-2a-4a^2")], 1)
    cert = irreducibility_cert_deg1(f, R)
    three = K.rational(3)
    classes = []
    moduli = []
    for b in cert.branches:
        k = branch_class(b["g0"], R, three)
        if k is None:
            k = branch_class(b["h0"], R, three)
        classes.append(k)
        moduli.append(None if b["certificate"] is None else b["certificate"].modulus)
    return {
        "irreducible": cert.irreducible,
        "branch_classes": sorted(c for c in classes if c is not None),
        "unclassified_branches": sum(c is None for c in classes),
        "moduli": sorted(m for m in moduli if m is not None),
    }


def case_hfd_witness(ctx: Context) -> dict:
    K, _, P, R, _ = ctx.cubic
    beta = K.parse("2-4a+a^2")
    f = TruncSeries([beta * 3, beta * K.gen], 1)
    w = hfd_violation_witness(f, TruncSeries([beta], 1), K.rational(3), K.gen, P, R)
    return {"m": w.m, "k": w.k, "coefficients": len(w.coefficients), "all_in_order": w.all_in_order}


def case_hfd_sweep(ctx: Context) -> dict:
    ev = hfd_evidence(ctx.cubic[3], 3000)
    return {"consistent": ev.consistent, "irreducibles_checked_positive": ev.checked > 0}


def case_class_number(ctx: Context) -> dict:
    R = order_z_plus(ctx.fields["Q-sqrt2"], 5)
    bad = [
        e.name
        for e, rep in ctx.reports
        if rep.locally_associated.verdict and rep.quadruple[3] != e.order.field.class_number
    ]
    return {"Z[5sqrt2]": class_number_of_order(R), "locally_associated_mismatches": bad}


def case_davenport(ctx: Context) -> dict:
    groups = {f"Z/{n}": (n,) for n in range(1, 9)}
    groups.update({"Z/2+Z/2": (2, 2), "Z/3+Z/3": (3, 3), "Z/2+Z/4": (2, 4)})
    return {name: davenport(AbelianGroup(orders)) for name, orders in groups.items()}


def case_associated_implies(ctx: Context) -> dict:
    bad = [
        e.name
        for e, r in ctx.reports
        if r.associated.verdict and not (r.ideal_preserving.verdict and r.locally_associated.verdict)
    ]
    return {"at_least_20_orders": len(ctx.reports) >= 20, "exceptions": bad}


def case_radical_converse(ctx: Context) -> dict:
    bad = [
        e.name
        for e, r in ctx.reports
        if r.conductor_radical
        and r.associated.verdict != (r.ideal_preserving.verdict and r.locally_associated.verdict)
    ]
    return {"exceptions": bad}


def _ideal_preserving_members(ctx: Context):
    return [(e, ideal_divisors(e.order.conductor)) for e, r in ctx.reports if r.ideal_preserving.verdict]


def case_intermediate_conductor(ctx: Context) -> dict:
    bad = []
    for e, divs in _ideal_preserving_members(ctx):
        I = e.order.conductor
        for J in divs:
            if intermediate_order(e.order, J).conductor != ideal_sum(I, J):
                bad.append(e.name)
    return {"exceptions": sorted(set(bad))}


def case_intersections(ctx: Context) -> dict:
    bad = []
    for e, divs in _ideal_preserving_members(ctx):
        R = e.order
        for J1, J2 in itertools.combinations_with_replacement(divs, 2):
            left = (R.lattice + J1.lattice).intersect(R.lattice + J2.lattice)
            if left != R.lattice + ideal_intersect(J1, J2).lattice:
                bad.append(e.name)
    return {"exceptions": sorted(set(bad))}


def case_inheritance(ctx: Context) -> dict:
    bad = []
    for e, _ in ctx.reports:
        for J in ideal_divisors(e.order.conductor):
            try:
                check_inheritance(e.order, J)
            except InvariantViolation:
                bad.append(e.name)
    return {"exceptions": sorted(set(bad))}


def case_open_question_probe(ctx: Context) -> dict:
    """Orders that are ideal-preserving and locally associated but not associated.

    No such order is known; any hit shows up as a diff against the empty list.
    """
    hits = [
        e.name
        for e, r in ctx.reports
        if r.ideal_preserving.verdict and r.locally_associated.verdict and not r.associated.verdict
    ]
    return {"candidates": hits}


@dataclass
class Case:
    name: str
    run: Callable[[Context], Any]


CASES = [
    Case("z5sqrt2-local-units", case_z5sqrt2),
    Case("z2sqrt2-not-ideal-preserving", case_z2sqrt2),
    Case("cubic-three-splits", case_cubic_split),
    Case("cubic-conductor-principal", case_cubic_conductor),
    Case("cubic-associated", case_cubic_associated),
    Case("cubic-unit-indices", case_cubic_unit_indices),
    Case("cubic-residue-field", case_cubic_residue_field),
    Case("series-association-obstruction", case_obstruction),
    Case("series-degree-one-irreducible", case_irreducibility),
    Case("series-hfd-witness", case_hfd_witness),
    Case("cubic-hfd-sweep", case_hfd_sweep),
    Case("class-number-formula", case_class_number),
    Case("davenport-small-groups", case_davenport),
    Case("corpus-associated-implies-both", case_associated_implies),
    Case("corpus-radical-conductor", case_radical_converse),
    Case("corpus-intermediate-conductor", case_intermediate_conductor),
    Case("corpus-intersections", case_intersections),
    Case("corpus-inheritance", case_inheritance),
    Case("corpus-open-question-probe", case_open_question_probe),
]


@dataclass
class CaseResult:
    name: str
    basis: str
    expected: Any
    computed: Any
    passed: bool
    seconds: float
    error: str | None = None


@dataclass
class VerificationSuite:
    cases: list[CaseResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def diff(self) -> list[dict]:
        return [
            {"name": c.name, "expected": c.expected, "computed": c.computed, "error": c.error}
            for c in self.cases
            if not c.passed
        ]


def run_verification(
    only: str | None = None, fields_dir: str | Path | None = None, golden_path: str | Path | None = None
) -> VerificationSuite:
    golden = load_golden(golden_path)
    selected = [c for c in CASES if only is None or c.name == only]
    if not selected:
        raise InputError(f"no case named {only!r}; known cases: {[c.name for c in CASES]}")
    ctx = Context(fields_dir)
    results = []
    for case in selected:
        entry = golden.get(case.name)
        if entry is None:
            raise InputError(f"golden file has no entry for {case.name}")
        t0 = time.perf_counter()
        try:
            computed = to_jsonable(case.run(ctx))
            error = None
        except InvariantViolation as exc:
            computed, error = None, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - t0
        ok = error is None and computed == entry["expected"]
        results.append(CaseResult(case.name, entry["basis"], entry["expected"], computed, ok, elapsed, error))
    return VerificationSuite(results)
