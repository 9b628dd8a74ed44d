"""Factorization in orders: divisors, irreducibility, length sets, Davenport constants.

An element d of R divides alpha in R exactly when dO divides alpha*O, dO is
principal, and d is u*g for a generator g of dO and a unit u of the maximal
order with u*g and alpha/(u*g) both in R.  Since {u : u*g in R} is a union of
U(R)-cosets, running u over coset representatives finds every divisor up to
associates in R.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from typing import Iterator

from .config import DAVENPORT_MAX_ORDER
from .errors import GuardExceeded, Inconclusive, InputError, PreconditionError
from .field import FieldElement
from .ideals import OrderRing, ideal_divisors, ideal_inverse_within, maximal_order, principal_ideal
from .lattice import ZLattice
from .units import coset_reps


# --- finite abelian groups ----------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """Z/n_1 + ... + Z/n_k given by invariant factors n_1 | n_2 | ..."""

    cyclic_orders: tuple[int, ...] = ()

    def __post_init__(self):
        orders = tuple(int(n) for n in self.cyclic_orders if int(n) != 1)
        if any(n < 1 for n in orders):
            raise InputError("cyclic orders must be positive")
        for a, b in zip(orders, orders[1:]):
            if b % a:
                raise InputError("cyclic orders must be invariant factors (each divides the next)")
        object.__setattr__(self, "cyclic_orders", orders)

    @classmethod
    def from_orders(cls, orders) -> "AbelianGroup":
        """Accept any list of cyclic orders and normalise it to invariant factors."""
        from sympy import factorint

        prime_powers: dict[int, list[int]] = {}
        for n in orders:
            if n < 1:
                raise InputError("cyclic orders must be positive")
            for p, e in factorint(n).items():
                prime_powers.setdefault(p, []).append(p**e)
        width = max((len(v) for v in prime_powers.values()), default=0)
        factors = [1] * width
        for p, pows in prime_powers.items():
            pows.sort(reverse=True)
            for i, q in enumerate(pows):
                factors[width - 1 - i] *= q
        return cls(tuple(factors))

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.cyclic_orders, 1)

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(n) for n in self.cyclic_orders)))

    def add(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.cyclic_orders))


def davenport(G: AbelianGroup) -> int:
    """D(G): one more than the longest zero-sum free sequence, by exhaustive search.

    Sequences are built in non-decreasing element order while tracking the set
    of nonempty subsequence sums; a sequence stays zero-sum free exactly when
    0 never enters that set.
    """
    if G.order > DAVENPORT_MAX_ORDER:
        raise GuardExceeded(f"group order {G.order} exceeds the Davenport search guard {DAVENPORT_MAX_ORDER}")
    if G.order == 1:
        return 1
    elems = [g for g in G.elements() if any(g)]
    zero = tuple(0 for _ in G.cyclic_orders)
    best = 0

    def extend(start: int, sums: frozenset, length: int) -> None:
        nonlocal best
        best = max(best, length)
        # a zero-sum free sequence has at most |G| - 1 terms
        if length + 1 > G.order - 1:
            return
        for i in range(start, len(elems)):
            g = elems[i]
            new = {G.add(s, g) for s in sums}
            new.add(g)
            if zero in new:
                continue
            extend(i, frozenset(new | sums), length + 1)

    extend(0, frozenset(), 0)
    return best + 1


def elasticity_maximal(class_group) -> Fraction:
    """Elasticity of a maximal order from its class group: 1 when trivial, else D(Cl)/2."""
    G = class_group if isinstance(class_group, AbelianGroup) else AbelianGroup.from_orders(list(class_group))
    if G.order == 1:
        return Fraction(1)
    return Fraction(davenport(G), 2)


# --- divisors ---------------------------------------------------------------------

def _is_unit(x: FieldElement) -> bool:
    return abs(x.norm()) == 1


def _require_member(alpha: FieldElement, R: OrderRing) -> None:
    if alpha.is_zero():
        raise InputError("zero has no factorizations")
    if not R.contains(alpha):
        raise PreconditionError("element does not lie in the order")


def associate_key(x: FieldElement, R: OrderRing) -> ZLattice:
    """Canonical label of the associate class of x in R: the lattice xR."""
    return R.lattice.scale(x, R.field)


def divisors_in_order(alpha: FieldElement, R: OrderRing) -> list[tuple[FieldElement, FieldElement]]:
    """All (d, alpha/d) with d in R dividing alpha in R, one d per associate class."""
    from .classgroup import class_map

    _require_member(alpha, R)
    field = R.field
    cm = class_map(field)
    whole = principal_ideal(alpha)
    cm.note_principal(alpha)
    reps = coset_reps(R).reps
    out = []
    seen = set()
    for D in ideal_divisors(whole):
        try:
            g = cm.generator(D)
        except Inconclusive:
            cof = ideal_inverse_within(D, whole)
            g2 = cm.generator(cof)  # may raise Inconclusive again
            g = None if g2 is None else alpha / g2
        if g is None:
            continue
        for u in reps:
            d = u * g
            if not R.contains(d):
                continue
            c = alpha / d
            if not R.contains(c):
                continue
            key = associate_key(d, R)
            if key in seen:
                continue
            seen.add(key)
            out.append((d, c))
    return out


def nonunit_splits(alpha: FieldElement, R: OrderRing):
    return [(d, c) for d, c in divisors_in_order(alpha, R) if not _is_unit(d) and not _is_unit(c)]


@dataclass
class IrreducibilityVerdict:
    irreducible: bool
    witness: tuple[FieldElement, FieldElement] | None = None


def is_irreducible_in(alpha: FieldElement, R: OrderRing) -> IrreducibilityVerdict:
    _require_member(alpha, R)
    if _is_unit(alpha):
        raise PreconditionError("unit input: units are neither irreducible nor reducible")
    splits = nonunit_splits(alpha, R)
    if splits:
        return IrreducibilityVerdict(False, splits[0])
    return IrreducibilityVerdict(True)


@dataclass
class LengthSet:
    element: FieldElement
    lengths: tuple[int, ...]
    complete: bool = True
    factorizations: list[tuple[FieldElement, ...]] = dc_field(default_factory=list)

    @property
    def elasticity(self) -> Fraction:
        return Fraction(max(self.lengths), min(self.lengths))


class _LengthSolver:
    def __init__(self, R: OrderRing, max_len: int):
        self.R = R
        self.max_len = max_len
        self.truncated = False
        self.memo: dict[ZLattice, frozenset[int]] = {}
        self.irr_memo: dict[ZLattice, bool] = {}
        self.split_memo: dict[ZLattice, list] = {}

    def splits(self, x: FieldElement):
        key = associate_key(x, self.R)
        if key not in self.split_memo:
            self.split_memo[key] = nonunit_splits(x, self.R)
        return self.split_memo[key]

    def irreducible(self, x: FieldElement) -> bool:
        key = associate_key(x, self.R)
        if key not in self.irr_memo:
            self.irr_memo[key] = not self.splits(x)
        return self.irr_memo[key]

    def lengths(self, x: FieldElement, depth: int = 0) -> frozenset[int]:
        key = associate_key(x, self.R)
        if key in self.memo:
            return self.memo[key]
        if depth >= self.max_len:
            self.truncated = True
            return frozenset()
        out = set()
        splits = self.splits(x)
        if not splits:
            out.add(1)
        for d, c in splits:
            if self.irreducible(d):
                out.update(1 + k for k in self.lengths(c, depth + 1) if 1 + k <= self.max_len)
        result = frozenset(out)
        if not self.truncated:
            self.memo[key] = result
        return result


def length_set(alpha: FieldElement, R: OrderRing, max_len: int = 16) -> LengthSet:
    """Lengths of all factorizations of alpha into irreducibles of R, up to max_len."""
    _require_member(alpha, R)
    if _is_unit(alpha):
        raise PreconditionError("unit input: units have no factorization into irreducibles")
    solver = _LengthSolver(R, max_len)
    lengths = solver.lengths(alpha)
    return LengthSet(alpha, tuple(sorted(lengths)), complete=not solver.truncated)


# --- sampling and HFD evidence ------------------------------------------------

def sample_box(R: OrderRing, height: int, norm_bound: int) -> Iterator[FieldElement]:
    """Elements of R with coordinates in [-height, height] over its HNF basis and 1 < |N| <= norm_bound.

    One element per associate class in R, in lexicographic coordinate order.
    """
    basis = R.basis
    seen = set()
    for coeffs in itertools.product(range(-height, height + 1), repeat=len(basis)):
        if not any(coeffs):
            continue
        x = R.field.zero
        for c, b in zip(coeffs, basis):
            if c:
                x = x + b * c
        n = abs(x.norm())
        if not (1 < n <= norm_bound):
            continue
        key = associate_key(x, R)
        if key in seen:
            continue
        seen.add(key)
        yield x


@dataclass
class HfdEvidence:
    consistent: bool
    reason: str
    checked: int = 0
    violation: FieldElement | None = None


def hfd_evidence(R: OrderRing, norm_bound: int, height: int = 3) -> HfdEvidence:
    """Bounded check of the HFD criterion; reports consistency only, never a proof."""
    from .structure import is_associated

    if R.field.class_number > 2:
        return HfdEvidence(False, "maximal order is not half-factorial (class number above 2)")
    if R.is_maximal():
        return HfdEvidence(True, "maximal order with class number at most 2")
    if not is_associated(R).verdict:
        return HfdEvidence(False, "order is not associated")
    O = maximal_order(R.field)
    checked = 0
    for x in sample_box(R, height, norm_bound):
        if is_irreducible_in(x, R).irreducible:
            checked += 1
            if not is_irreducible_in(x, O).irreducible:
                return HfdEvidence(False, "irreducible of the order splits in the maximal order", checked, x)
    return HfdEvidence(True, f"consistent with HFD up to |norm| <= {norm_bound}", checked)
