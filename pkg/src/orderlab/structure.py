"""Decision procedures for associated, ideal-preserving and locally associated orders."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import InvariantViolation
from .ideals import OIdeal, OrderRing, intermediate_order, is_radical, maximal_order
from .quotients import FiniteQuotient, count_units, quotient_of
from .units import coset_reps, unit_index


@dataclass
class Verdict:
    verdict: bool
    certificate: dict[str, Any] = dc_field(default_factory=dict)

    def __bool__(self):
        return self.verdict


@dataclass
class PropertyReport:
    associated: Verdict
    ideal_preserving: Verdict
    locally_associated: Verdict
    conductor_radical: bool

    @property
    def quadruple(self) -> tuple[int, int, int, int]:
        c = self.locally_associated.certificate
        return (c["unit_index"], c["units_maximal_mod_I"], c["units_order_mod_I"], c["class_number"])

    def check_implications(self) -> None:
        if self.associated.verdict and not (self.ideal_preserving.verdict and self.locally_associated.verdict):
            raise InvariantViolation("associated order that is not ideal-preserving and locally associated")
        if self.conductor_radical:
            both = self.ideal_preserving.verdict and self.locally_associated.verdict
            if both != self.associated.verdict:
                raise InvariantViolation("radical conductor but associated differs from ip and la")


def _quotients(R: OrderRing) -> tuple[FiniteQuotient, FiniteQuotient]:
    cache = R.__dict__.setdefault("_quotients", {})
    if "pair" not in cache:
        I = R.conductor
        field = R.field
        cache["pair"] = (
            quotient_of(field.maximal_order, I.lattice, field),
            quotient_of(R.lattice, I.lattice, field),
        )
    return cache["pair"]


def _order_residue_table(R: OrderRing) -> tuple[FiniteQuotient, np.ndarray]:
    """Boolean table over the codes of O/I marking residues that lie in R/I."""
    q_max, q_ord = _quotients(R)
    table = np.zeros(q_max.size, dtype=bool)
    for row in q_ord.all_elements().tolist():
        x = q_ord.lift(row)
        code = q_max.encode(np.array(q_max.coords(x), dtype=np.int64))
        table[int(code)] = True
    return q_max, table


def is_associated(R: OrderRing) -> Verdict:
    """Every residue t of O/I has a coset representative u with u*t in R (membership mod I)."""
    reps = coset_reps(R)
    q_max, table = _order_residue_table(R)
    elems = q_max.all_elements()
    witness = np.full(len(elems), -1, dtype=np.int64)
    for i, u in enumerate(reps.reps):
        hit = table[q_max.encode(q_max.multiply_by(elems, u))]
        witness[(witness < 0) & hit] = i
    missing = np.nonzero(witness < 0)[0]
    if len(missing):
        t = q_max.lift(elems[int(missing[0])].tolist())
        return Verdict(False, {"counterexample": t, "residue": tuple(int(v) for v in elems[int(missing[0])])})
    return Verdict(
        True,
        {
            "reps": reps.reps,
            "rep_of_residue": witness.tolist(),
            "residues": q_max.size,
        },
    )


def _prime_power(P, e) -> OIdeal:
    from .ideals import ideal_pow

    return ideal_pow(P, e)


def is_ideal_preserving(R: OrderRing) -> Verdict:
    """R meets each P | I outside every other P' | I and outside P^2."""
    I = R.conductor
    primes = [P for P, _ in I.factorization]
    for P in primes:
        meet = R.lattice.intersect(P.lattice)
        sq = _prime_power(P, 2)
        if meet.issubset(sq.lattice):
            return Verdict(False, {"pair": (P, sq), "kind": "square"})
        for P2 in primes:
            if P2 is not P and P2 != P and meet.issubset(P2.lattice):
                return Verdict(False, {"pair": (P, P2), "kind": "other-prime"})
    return Verdict(True, {"primes": primes})


def local_quadruple(R: OrderRing) -> tuple[int, int, int, int]:
    """([U(O):U(R)], |U(O/I)|, |U(R/I)|, |Cl(R)|)."""
    q_max, q_ord = _quotients(R)
    idx = unit_index(R)
    u_max = count_units(q_max)
    u_ord = count_units(q_ord)
    cl = class_number_from(R.field.class_number, u_max, u_ord, idx)
    return idx, u_max, u_ord, cl


def class_number_from(h: int, u_max: int, u_ord: int, idx: int) -> int:
    value = Fraction(h * u_max, u_ord * idx)
    if value.denominator != 1:
        raise InvariantViolation(f"class number formula gave a non-integer {value}")
    return int(value)


def is_locally_associated(R: OrderRing) -> Verdict:
    idx, u_max, u_ord, cl = local_quadruple(R)
    verdict = idx * u_ord == u_max
    return Verdict(
        verdict,
        {
            "unit_index": idx,
            "units_maximal_mod_I": u_max,
            "units_order_mod_I": u_ord,
            "class_number": cl,
        },
    )


def class_number_of_order(R: OrderRing) -> int:
    return local_quadruple(R)[3]


def property_report(R: OrderRing) -> PropertyReport:
    report = PropertyReport(
        associated=is_associated(R),
        ideal_preserving=is_ideal_preserving(R),
        locally_associated=is_locally_associated(R),
        conductor_radical=is_radical(R.conductor),
    )
    report.check_implications()
    return report


def check_inheritance(R: OrderRing, J: OIdeal) -> dict[str, tuple[bool, bool]]:
    """Predicates on R and on T = R + J; any property of R missing from T is a violation."""
    T = intermediate_order(R, J)
    pairs = {
        "associated": (is_associated(R).verdict, is_associated(T).verdict),
        "ideal_preserving": (is_ideal_preserving(R).verdict, is_ideal_preserving(T).verdict),
        "locally_associated": (is_locally_associated(R).verdict, is_locally_associated(T).verdict),
    }
    for name, (a, b) in pairs.items():
        if a and not b:
            raise InvariantViolation(f"{name} not inherited by R + J")
    return pairs


def maximal_report(field) -> PropertyReport:
    return property_report(maximal_order(field))
