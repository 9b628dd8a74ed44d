"""Unit groups of orders: Pell solutions, unit index and coset representatives.

Unit groups of rank at most one are handled.  For an order R with conductor
I, a unit of the maximal order lies in R exactly when its residue mod I lies
in R/I, so every membership test below runs on residues and stays small.
The search for the smallest power of the fundamental unit landing in R is
capped at |U(O/I)|, since U(O)/U(R) embeds in U(O/I)/U(R/I).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import sympy

from .errors import InputError, InvariantViolation, UnsupportedError
from .field import FieldElement, FieldSpec
from .ideals import OrderRing, maximal_order

PELL_GUARD = 10**6


def pell_fundamental(d: int, field: FieldSpec | None = None):
    """Smallest unit x + y*sqrt(d) > 1 of Z[sqrt(d)], via the continued fraction of sqrt(d).

    Returns ``(x, y)``, or a FieldElement when ``field`` is defined by x^2 - d.
    """
    if not isinstance(d, int) or d < 2 or d > PELL_GUARD:
        raise InputError(f"d must be an integer in [2, {PELL_GUARD}]")
    if not sympy.ntheory.factor_.core(d) == d:
        raise InputError(f"{d} is not squarefree")
    a0 = math.isqrt(d)
    m, q, a = 0, 1, a0
    p_prev, p = 1, a0
    r_prev, r = 0, 1
    while p * p - d * r * r not in (1, -1):
        m = a * q - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        p_prev, p = p, a * p + p_prev
        r_prev, r = r, a * r + r_prev
    if field is None:
        return p, r
    if tuple(field.min_poly) != (-d, 0, 1):
        raise InputError("field is not defined by x^2 - d")
    return field.element([p, r])


@dataclass(frozen=True)
class UnitGroupDesc:
    torsion_order: int
    torsion_generator: FieldElement
    fundamentals: tuple[FieldElement, ...]
    owner: OrderRing


@dataclass(frozen=True)
class CosetReps:
    """Representatives of U(O)/U(R): torsion_step**a * eps**b for a < torsion_index, b < power_index."""

    reps: tuple[FieldElement, ...]
    index: int
    torsion_index: int
    power_index: int
    exponents: tuple[tuple[int, int], ...]


class _UnitData:
    def __init__(self, order: OrderRing):
        field = order.field
        if field.unit_rank > 1:
            raise UnsupportedError(f"unsupported rank: unit rank {field.unit_rank} is above 1")
        self.order = order
        self.field = field
        self.zeta = field.torsion_generator
        self.w = field.torsion_order
        self.eps = field.fundamental_units[0] if field.fundamental_units else None

    @cached_property
    def ceiling(self) -> int:
        from .quotients import count_units, quotient_of

        I = self.order.conductor
        return count_units(quotient_of(self.field.maximal_order, I.lattice, self.field))

    @cached_property
    def torsion_index(self) -> int:
        # smallest t | w with zeta^t in R
        z = self.field.one
        for t in range(1, self.w + 1):
            z = z * self.zeta
            if self.order.contains(z):
                return t
        raise InvariantViolation("1 is not in the order")

    def _reduce(self, x: FieldElement) -> FieldElement:
        return self.order.conductor.lattice.reduce(x)

    @cached_property
    def power_data(self) -> tuple[int, int]:
        """(k, a): smallest k >= 1 with zeta^a * eps^k in R, and such an a."""
        if self.eps is None:
            return 1, 0
        if self.order.is_maximal():
            return 1, 0
        zetas = [self.field.one]
        for _ in range(self.w - 1):
            zetas.append(zetas[-1] * self.zeta)
        power = self.field.one
        for k in range(1, self.ceiling + 1):
            power = self._reduce(power * self.eps)
            for a, z in enumerate(zetas):
                if self.order.contains(self._reduce(z * power)):
                    return k, a
        raise InvariantViolation("no power of the fundamental unit lies in the order within the proven bound")


def _unit_data(order: OrderRing) -> _UnitData:
    data = order.__dict__.get("_unit_data")
    if data is None:
        data = _UnitData(order)
        order.__dict__["_unit_data"] = data
    return data


def unit_group(order: OrderRing) -> UnitGroupDesc:
    """Generators of U(order): a root of unity and (rank 1) one fundamental unit."""
    d = _unit_data(order)
    zeta_r = d.zeta ** d.torsion_index
    fundamentals: tuple[FieldElement, ...] = ()
    if d.eps is not None:
        k, a = d.power_data
        fundamentals = ((d.zeta**a) * d.eps**k,)
    return UnitGroupDesc(d.w // d.torsion_index, zeta_r, fundamentals, order)


def unit_index(order: OrderRing) -> int:
    """[U(O) : U(order)], torsion included."""
    d = _unit_data(order)
    return d.torsion_index * d.power_data[0]


def coset_reps(order: OrderRing) -> CosetReps:
    d = _unit_data(order)
    t = d.torsion_index
    k = d.power_data[0]
    reps = []
    exps = []
    eps = d.eps if d.eps is not None else d.field.one
    zp = d.field.one
    for a in range(t):
        ep = d.field.one
        for b in range(k):
            reps.append(zp * ep)
            exps.append((a, b))
            ep = ep * eps
        zp = zp * d.zeta
    return CosetReps(tuple(reps), t * k, t, k, tuple(exps))


def maximal_unit_group(field: FieldSpec) -> UnitGroupDesc:
    return unit_group(maximal_order(field))


def coset_of(v: FieldElement, order: OrderRing) -> int:
    """Index into coset_reps(order).reps of the coset containing the unit v."""
    if abs(v.norm()) != 1 or not order.field.maximal_order.contains(v):
        raise InputError("not a unit of the maximal order")
    reps = coset_reps(order).reps
    for i, r in enumerate(reps):
        if order.contains(v / r):
            return i
    raise InvariantViolation("unit lies in no coset; representatives are incomplete")
