"""Orders, ideals of the maximal order, and prime splitting."""

from __future__ import annotations

import itertools
import threading
from functools import cached_property
from typing import Sequence

import sympy

from .errors import InputError, InvariantViolation, PreconditionError, UnsupportedError
from .field import FieldElement, FieldSpec
from .lattice import ZLattice

_cache_lock = threading.Lock()


def _field_cache(field: FieldSpec) -> dict:
    # per-field memo table; FieldSpec hashes by identity
    with _cache_lock:
        cache = field.__dict__.get("_orderlab_cache")
        if cache is None:
            cache = {}
            field.__dict__["_orderlab_cache"] = cache
        return cache


class OIdeal:
    """A nonzero integral ideal of the maximal order, identified by its lattice."""

    def __init__(self, field: FieldSpec, lattice: ZLattice, *, check: bool = True):
        self.field = field
        self.lattice = lattice
        if check:
            if not lattice.issubset(field.maximal_order):
                raise InputError("ideal lattice is not contained in the maximal order")
            elems = lattice.basis_elements(field)
            for b in field.maximal_elements:
                for x in elems:
                    if not lattice.contains(b * x):
                        raise InputError("lattice is not stable under the maximal order")

    @classmethod
    def from_generators(cls, field: FieldSpec, gens: Sequence[FieldElement]) -> "OIdeal":
        elems = [g * b for g in gens for b in field.maximal_elements]
        return cls(field, ZLattice.from_elements(elems), check=False)

    @classmethod
    def unit(cls, field: FieldSpec) -> "OIdeal":
        return cls(field, field.maximal_order, check=False)

    @cached_property
    def norm(self) -> int:
        return self.field.maximal_order.index_of(self.lattice)

    def is_unit_ideal(self) -> bool:
        return self.lattice == self.field.maximal_order

    @cached_property
    def factorization(self) -> tuple[tuple["PrimeIdeal", int], ...]:
        return tuple(factor_ideal(self))

    def contains(self, x: FieldElement) -> bool:
        return self.lattice.contains(x)

    def divides(self, other: "OIdeal") -> bool:
        """self | other, i.e. other is contained in self."""
        return other.lattice.issubset(self.lattice)

    def __mul__(self, other: "OIdeal") -> "OIdeal":
        return ideal_mul(self, other)

    def __pow__(self, e: int) -> "OIdeal":
        return ideal_pow(self, e)

    def __eq__(self, other):
        if not isinstance(other, OIdeal):
            return NotImplemented
        return self.field is other.field and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def __repr__(self):
        return f"OIdeal(norm={self.norm}, hnf={self.lattice.hnf}, den={self.lattice.den})"


class PrimeIdeal(OIdeal):
    """A prime of the maximal order above ``p``, written as ``(p, gen)``."""

    def __init__(self, field: FieldSpec, p: int, gen: FieldElement, residue_degree: int, ramification: int):
        lattice = OIdeal.from_generators(field, [field.rational(p), gen]).lattice
        super().__init__(field, lattice, check=False)
        self.p = p
        self.gen = gen
        self.residue_degree = residue_degree
        self.ramification = ramification

    @property
    def two_gens(self) -> tuple[int, FieldElement]:
        return self.p, self.gen

    def __repr__(self):
        return f"PrimeIdeal({self.p}, {self.gen}; f={self.residue_degree}, e={self.ramification})"


class OrderRing:
    """An order: a full-rank subring of the maximal order containing 1."""

    def __init__(self, field: FieldSpec, lattice: ZLattice, *, check: bool = True):
        self.field = field
        self.lattice = lattice
        if check:
            self._validate()

    def _validate(self) -> None:
        f = self.field
        if not self.lattice.contains(f.one):
            raise InputError("lattice does not contain 1")
        if not self.lattice.issubset(f.maximal_order):
            raise InputError("not a ring of integers: lattice is not contained in the maximal order")
        elems = self.basis
        for i, x in enumerate(elems):
            for y in elems[i:]:
                if not self.lattice.contains(x * y):
                    raise InputError("not a ring: lattice is not closed under multiplication")

    @cached_property
    def basis(self) -> list[FieldElement]:
        return self.lattice.basis_elements(self.field)

    @cached_property
    def index(self) -> int:
        """[maximal order : self]."""
        return self.field.maximal_order.index_of(self.lattice)

    def is_maximal(self) -> bool:
        return self.lattice == self.field.maximal_order

    @cached_property
    def conductor(self) -> OIdeal:
        lat = self.lattice.colon(self.field.maximal_order, self.field)
        ideal = OIdeal(self.field, lat, check=False)
        if not lat.issubset(self.lattice):
            raise InvariantViolation("conductor not contained in the order")
        for b in self.field.maximal_elements:
            for x in lat.basis_elements(self.field):
                if not lat.contains(b * x):
                    raise InvariantViolation("conductor is not an ideal of the maximal order")
        return ideal

    def contains(self, x: FieldElement) -> bool:
        return self.lattice.contains(x)

    def __eq__(self, other):
        if not isinstance(other, OrderRing):
            return NotImplemented
        return self.field is other.field and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def __repr__(self):
        return f"OrderRing(index={self.index}, hnf={self.lattice.hnf}, den={self.lattice.den})"


def make_order(lattice: ZLattice, field: FieldSpec) -> OrderRing:
    order = OrderRing(field, lattice)
    order.conductor  # validated on construction
    return order


def maximal_order(field: FieldSpec) -> OrderRing:
    cache = _field_cache(field)
    if "maximal" not in cache:
        cache["maximal"] = OrderRing(field, field.maximal_order, check=False)
    return cache["maximal"]


def order_z_plus(field: FieldSpec, m: int) -> OrderRing:
    """Z + m * maximal order."""
    if m < 1:
        raise InputError("conductor seed must be a positive integer")
    elems = [field.one] + [b * m for b in field.maximal_elements]
    return make_order(ZLattice.from_elements(elems), field)


def order_z_plus_ideal(field: FieldSpec, ideal: OIdeal) -> OrderRing:
    elems = [field.one] + ideal.lattice.basis_elements(field)
    return make_order(ZLattice.from_elements(elems), field)


def order_monogenic(field: FieldSpec, theta: FieldElement) -> OrderRing:
    """Z[theta] for an algebraic integer theta generating the field."""
    powers = [field.one]
    for _ in range(field.degree - 1):
        powers.append(powers[-1] * theta)
    return make_order(ZLattice.from_elements(powers), field)


# --- primes --------------------------------------------------------------------

def split_prime(p: int, field: FieldSpec) -> list[PrimeIdeal]:
    """Primes of the maximal order above p via factoring the minimal polynomial mod p."""
    if not isinstance(p, int) or p < 2 or not sympy.isprime(p):
        raise InputError(f"{p} is not a rational prime")
    cache = _field_cache(field)
    key = ("split", p)
    if key in cache:
        return cache[key]
    if field.index % p == 0:
        raise UnsupportedError(f"unsupported: p={p} divides the index [O : Z[t]]")
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(field.min_poly)), x, modulus=p)
    _, factors = poly.factor_list()
    primes = []
    for g, e in factors:
        coeffs = [int(c) % p for c in reversed(g.all_coeffs())]
        gen = field.zero
        power = field.one
        for c in coeffs:
            if c:
                gen = gen + power * c
            power = power * field.gen
        primes.append(PrimeIdeal(field, p, gen, g.degree(), e))
    primes.sort(key=lambda P: (P.residue_degree, P.ramification, [int(c) for c in P.gen.nums]))
    total = sum(P.residue_degree * P.ramification for P in primes)
    if total != field.degree:
        raise InvariantViolation(f"splitting of {p} does not account for the degree")
    for P in primes:
        if P.norm != p**P.residue_degree:
            raise InvariantViolation(f"prime above {p} has unexpected norm {P.norm}")
    cache[key] = primes
    return primes


def factor_ideal(J: OIdeal) -> list[tuple[PrimeIdeal, int]]:
    field = J.field
    norm = J.norm
    out: list[tuple[PrimeIdeal, int]] = []
    for p in sorted(sympy.factorint(norm)):
        for P in split_prime(int(p), field):
            e = 0
            power = P.lattice
            while J.lattice.issubset(power):
                e += 1
                power = power.product(P.lattice, field)
            if e:
                out.append((P, e))
    rebuilt = field.maximal_order
    for P, e in out:
        for _ in range(e):
            rebuilt = rebuilt.product(P.lattice, field)
    if rebuilt != J.lattice:
        raise InvariantViolation("prime factorization does not reproduce the ideal")
    return out


# --- ideal arithmetic ------------------------------------------------------------

def _same_field(a: OIdeal, b: OIdeal) -> None:
    if a.field is not b.field:
        raise InputError("ideals belong to different fields")


def ideal_mul(a: OIdeal, b: OIdeal) -> OIdeal:
    _same_field(a, b)
    return OIdeal(a.field, a.lattice.product(b.lattice, a.field), check=False)


def ideal_pow(a: OIdeal, e: int) -> OIdeal:
    if e < 0:
        raise InputError("negative ideal powers are fractional")
    out = OIdeal.unit(a.field)
    for _ in range(e):
        out = ideal_mul(out, a)
    return out


def ideal_sum(a: OIdeal, b: OIdeal) -> OIdeal:
    _same_field(a, b)
    return OIdeal(a.field, a.lattice + b.lattice, check=False)


def ideal_intersect(a: OIdeal, b: OIdeal) -> OIdeal:
    _same_field(a, b)
    return OIdeal(a.field, a.lattice.intersect(b.lattice), check=False)


def ideal_inverse_within(J: OIdeal, I: OIdeal) -> OIdeal:
    """I * J^-1 for a divisor J of I."""
    _same_field(J, I)
    if not J.divides(I):
        raise PreconditionError("J does not divide I")
    return OIdeal(I.field, I.lattice.colon(J.lattice, I.field), check=False)


def is_radical(J: OIdeal) -> bool:
    return all(e == 1 for _, e in J.factorization)


def is_coprime(a: OIdeal, b: OIdeal) -> bool:
    return ideal_sum(a, b).is_unit_ideal()


def ideal_divisors(J: OIdeal) -> list[OIdeal]:
    """Every ideal dividing J, ordered by norm and then by lattice."""
    fac = J.factorization
    field = J.field
    out = []
    for exps in itertools.product(*(range(e + 1) for _, e in fac)):
        D = OIdeal.unit(field)
        for (P, _), k in zip(fac, exps):
            if k:
                D = ideal_mul(D, ideal_pow(P, k))
        out.append(D)
    out.sort(key=lambda D: (D.norm, D.lattice.hnf, D.lattice.den))
    return out


def principal_ideal(x: FieldElement) -> OIdeal:
    if x.is_zero():
        raise InputError("the zero ideal is not supported")
    return OIdeal.from_generators(x.field, [x])


def intermediate_order(R: OrderRing, J: OIdeal) -> OrderRing:
    """R + J; when J divides the conductor of an ideal-preserving R its conductor must be J."""
    T = make_order(R.lattice + J.lattice, R.field)
    I = R.conductor
    if J.divides(I):
        from .structure import is_ideal_preserving

        if is_ideal_preserving(R).verdict and T.conductor != J:
            raise InvariantViolation("conductor of R + J differs from J for an ideal-preserving R")
    return T
