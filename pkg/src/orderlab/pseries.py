"""Truncated power series over orders, and the certificates built on them.

Every claim made here is about series modulo x^(d+1).  A factorization or
association that fails at some finite degree fails in the full power series
ring too, so the negative certificates are exact; positive witnesses are only
truncations unless they come from a genuine polynomial identity.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

from .config import BRANCH_NODE_LIMIT
from .errors import GuardExceeded, InputError, InvariantViolation, PreconditionError
from .field import FieldElement, FieldSpec
from .ideals import OIdeal, OrderRing
from .lattice import ZLattice, smith
from .units import coset_reps


class TruncSeries:
    """c_0 + c_1 x + ... + c_d x^d, understood modulo x^(d+1)."""

    __slots__ = ("coeffs", "trunc_degree")

    def __init__(self, coeffs: Sequence[FieldElement], trunc_degree: int | None = None):
        coeffs = list(coeffs)
        if not coeffs:
            raise InputError("a series needs at least one coefficient")
        d = len(coeffs) - 1 if trunc_degree is None else trunc_degree
        if d < 0:
            raise InputError("truncation degree must be nonnegative")
        field = coeffs[0].field
        if len(coeffs) > d + 1:
            coeffs = coeffs[: d + 1]
        coeffs += [field.zero] * (d + 1 - len(coeffs))
        self.coeffs = tuple(coeffs)
        self.trunc_degree = d

    @property
    def field(self) -> FieldSpec:
        return self.coeffs[0].field

    @classmethod
    def constant(cls, c: FieldElement, d: int) -> "TruncSeries":
        return cls([c], d)

    def truncate(self, d: int) -> "TruncSeries":
        return TruncSeries(self.coeffs, d)

    def __getitem__(self, k: int) -> FieldElement:
        return self.coeffs[k]

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        return ts_mul(self, other)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        d = min(self.trunc_degree, other.trunc_degree)
        return TruncSeries([a + b for a, b in zip(self.coeffs[: d + 1], other.coeffs[: d + 1])], d)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.trunc_degree == other.trunc_degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"({c})" + ("" if k == 0 else f"x^{k}") for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return f"TruncSeries({' + '.join(terms) or '0'}; d={self.trunc_degree})"


def ts_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    d = min(a.trunc_degree, b.trunc_degree)
    out = []
    for k in range(d + 1):
        s = a.field.zero
        for i in range(k + 1):
            if not a.coeffs[i].is_zero() and not b.coeffs[k - i].is_zero():
                s = s + a.coeffs[i] * b.coeffs[k - i]
        out.append(s)
    return TruncSeries(out, d)


def _is_unit_of(x: FieldElement, lattice: ZLattice) -> bool:
    return not x.is_zero() and lattice.contains(x) and lattice.contains(x.inverse())


def ts_unit_inverse(a: TruncSeries, order: OrderRing | None = None) -> TruncSeries:
    """Inverse of a series whose constant term is a unit of ``order`` (default: the maximal order)."""
    lattice = order.lattice if order is not None else a.field.maximal_order
    c0 = a.coeffs[0]
    if not _is_unit_of(c0, lattice):
        raise PreconditionError("non-unit constant term")
    inv0 = c0.inverse()
    out = [inv0]
    for k in range(1, a.trunc_degree + 1):
        s = a.field.zero
        for i in range(1, k + 1):
            s = s + a.coeffs[i] * out[k - i]
        out.append(-(s * inv0))
    return TruncSeries(out, a.trunc_degree)


def series_in(s: TruncSeries, lattice: ZLattice) -> bool:
    return all(lattice.contains(c) for c in s.coeffs)


# --- unit splitting -----------------------------------------------------------------

def unit_split_trunc(
    u: TruncSeries, J1: OIdeal, J2: OIdeal, R: OrderRing, d: int | None = None
) -> tuple[TruncSeries, TruncSeries]:
    """Split a unit u of O[[x]] as v1 * v2 with v_i a unit of (R + J_i)[[x]].

    The constant term is split by searching coset representatives rho of
    U(O)/U(R) with rho in R + J1 and u_0/rho in R + J2.  Higher coefficients
    use e1 + e2 = 1 with e_i in J_i: the degree-k equation
    c_k * d_0 + c_0 * d_k = rhs is met by c_k = rhs*e1/d_0 and d_k = rhs*e2/c_0.
    """
    field = R.field
    d = u.trunc_degree if d is None else d
    u = u.truncate(d)
    O = field.maximal_order
    if not series_in(u, O) or not _is_unit_of(u.coeffs[0], O):
        raise PreconditionError("u must be a unit series over the maximal order")
    if not (J1.lattice + J2.lattice) == O:
        raise PreconditionError("J1 and J2 are not coprime")
    R1 = R.lattice + J1.lattice
    R2 = R.lattice + J2.lattice
    u0 = u.coeffs[0]
    split = None
    for rho in coset_reps(R).reps:
        if R1.contains(rho) and R2.contains(u0 / rho):
            split = rho
            break
    if split is None:
        raise InvariantViolation("no split found for the constant term")
    e1, e2 = J1.lattice.bezout_split(J2.lattice, field.one, field)
    c = [split]
    dd = [u0 / split]
    inv_c0 = c[0].inverse()
    inv_d0 = dd[0].inverse()
    for k in range(1, d + 1):
        rhs = u.coeffs[k]
        for i in range(1, k):
            rhs = rhs - c[i] * dd[k - i]
        c.append(rhs * e1 * inv_d0)
        dd.append(rhs * e2 * inv_c0)
    v1 = TruncSeries(c, d)
    v2 = TruncSeries(dd, d)
    if ts_mul(v1, v2) != u:
        raise InvariantViolation("unit split does not reproduce u")
    if not (series_in(v1, R1) and series_in(v2, R2)):
        raise InvariantViolation("unit split left the intermediate orders")
    return v1, v2


# --- association obstruction ---------------------------------------------------------

@dataclass
class ObstructionCertificate:
    target: TruncSeries
    order: OrderRing
    level: int
    branch_log: list[dict[str, Any]]
    nodes: int


@dataclass
class AssociationWitness:
    r: TruncSeries
    u: TruncSeries


def _annihilator_lattice(gs: Sequence[FieldElement], R: OrderRing) -> ZLattice:
    """{b in O : g*b in R for all g in gs}."""
    field = R.field
    out = field.maximal_order
    for g in gs:
        if g.is_zero():
            continue
        out = out.intersect(R.lattice.scale(g.inverse(), field))
    return out


def _coset_reps_lattice(big: ZLattice, small: ZLattice, field: FieldSpec) -> list[FieldElement]:
    """Representatives of the additive quotient big/small, in Smith-box order."""
    coords = [big.express(m) for m in small.basis_elements(field)]
    diag, _, _, vinv = smith(coords)
    basis = big.basis_elements(field)
    reps = []
    for s in itertools.product(*(range(dv) for dv in diag)):
        c = [0] * big.n
        for sk, row in zip(s, vinv):
            if sk:
                c = [a + sk * b for a, b in zip(c, row)]
        x = field.zero
        for ck, b in zip(c, basis):
            if ck:
                x = x + b * ck
        reps.append(x)
    return reps


def association_obstruction(
    g: TruncSeries, R: OrderRing, d: int | None = None, node_limit: int = BRANCH_NODE_LIMIT
):
    """Decide at truncation d whether g = r*u with r in R[[x]] and u a unit of O[[x]].

    Searches v = u^-1 = b_0 + b_1 x + ... with g*v in R[[x]].  b_0 runs over
    coset representatives with g_0*b_0 in R.  At level k the coefficient
    g_0*b_k + acc_k must lie in R, which is solvable iff acc_k lies in
    R + g_0*O; the solutions form a coset of L_0 = {b : g_0 b in R}, and only
    their classes modulo M_k = {b : g_j b in R for j <= d-k} matter later.
    """
    field = R.field
    d = g.trunc_degree if d is None else d
    g = g.truncate(d)
    O = field.maximal_order
    if not series_in(g, O):
        raise PreconditionError("g must have coefficients in the maximal order")
    g0 = g.coeffs[0]
    if g0.is_zero():
        raise PreconditionError("constant term must be nonzero")
    if series_in(g, R.lattice):
        return AssociationWitness(g, TruncSeries.constant(field.one, d))
    g0_lattice = ZLattice.from_elements([g0 * b for b in field.maximal_elements])
    target = R.lattice + g0_lattice
    L0 = _annihilator_lattice([g0], R)
    mods = {k: _annihilator_lattice(g.coeffs[: d - k + 1], R) for k in range(1, d + 1)}
    branch_reps = {k: _coset_reps_lattice(L0, mods[k], field) for k in range(1, d)}
    nodes = 0
    log: list[dict[str, Any]] = []
    deepest = 0

    def solve(acc: FieldElement) -> FieldElement | None:
        # a particular b with g0*b + acc in R, or None
        if not target.contains(acc):
            return None
        # acc = r + g0*b  =>  b' = -b works
        _, e_g = R.lattice.bezout_split(g0_lattice, acc, field)
        return -(e_g / g0)

    def descend(bs: list[FieldElement], k: int, rep_index: int):
        nonlocal nodes, deepest
        nodes += 1
        if nodes > node_limit:
            raise GuardExceeded(f"association search exceeded {node_limit} nodes")
        if k > d:
            return bs
        acc = field.zero
        for j in range(1, k + 1):
            acc = acc + g.coeffs[j] * bs[k - j]
        b = solve(acc)
        if b is None:
            deepest = max(deepest, k)
            log.append({"rep_index": rep_index, "level": k, "residue": acc, "choices": [str(x) for x in bs]})
            return None
        if k == d:
            return bs + [b]
        for delta in branch_reps[k]:
            found = descend(bs + [b + delta], k + 1, rep_index)
            if found is not None:
                return found
        return None

    for i, u0 in enumerate(coset_reps(R).reps):
        if not R.contains(g0 * u0):
            log.append({"rep_index": i, "level": 0, "residue": g0 * u0, "choices": []})
            continue
        found = descend([u0], 1, i) if d >= 1 else [u0]
        if found is not None:
            v = TruncSeries(found, d)
            r = ts_mul(g, v)
            u = ts_unit_inverse(v)
            if not series_in(r, R.lattice) or ts_mul(r, u) != g:
                raise InvariantViolation("association witness failed re-verification")
            return AssociationWitness(r, u)
    return ObstructionCertificate(g, R, deepest, log, nodes)


# --- degree-one irreducibility ----------------------------------------------------------

@dataclass
class NonMembership:
    """Integer functional c and modulus D: c.v = 0 mod D on the lattice, c.f != 0 mod D."""

    functional: tuple[int, ...]
    modulus: int
    scale: int
    value: int


def non_membership_certificate(lattice: ZLattice, x: FieldElement) -> NonMembership | None:
    """A dual-functional witness that x is not in lattice, or None when it is."""
    y = lattice.coords_of(x.nums, x.den)
    bad = next((i for i, c in enumerate(y) if c.denominator != 1), None)
    if bad is None:
        return None
    L = math.lcm(lattice.den, x.den)
    rows = [[v * (L // lattice.den) for v in r] for r in lattice.hnf]
    n = lattice.n
    # column `bad` of rows^-1: solve rows * col = e_bad by substitution on the lower triangle
    col = [Fraction(0)] * n
    for i in range(n):
        s = Fraction(int(i == bad)) - sum(rows[i][j] * col[j] for j in range(i))
        col[i] = s / rows[i][i]
    D = math.lcm(*(c.denominator for c in col))
    func = [int(c * D) for c in col]
    g = math.gcd(D, *func)
    func = [v // g for v in func]
    D //= g
    f_int = [v * (L // x.den) for v in x.nums]
    value = sum(a * b for a, b in zip(func, f_int)) % D
    for r in rows:
        if sum(a * b for a, b in zip(func, r)) % D:
            raise InvariantViolation("functional does not vanish on the lattice")
    if value == 0:
        raise InvariantViolation("functional fails to separate the element")
    return NonMembership(tuple(func), D, L, value)


@dataclass
class IrreducibilityCertificate:
    irreducible: bool
    branches: list[dict[str, Any]]
    surviving: list[dict[str, Any]] = dc_field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "irreducible" if self.irreducible else "inconclusive"


def irreducibility_cert_deg1(f: TruncSeries, R: OrderRing) -> IrreducibilityCertificate:
    """Rule out f = g*h with nonunit g, h in R[[x]] using coefficients of degree <= 1.

    Up to units, g_0*h_0 = f_0 runs over nonunit splittings of f_0 in R, and the
    degree-one equation g_0*h_1 + g_1*h_0 = f_1 is solvable iff f_1 lies in the
    lattice g_0*R + h_0*R.
    """
    from .factorization import associate_key, nonunit_splits

    field = R.field
    if f.trunc_degree < 1:
        raise InputError("need a series truncated at degree at least 1")
    f0, f1 = f.coeffs[0], f.coeffs[1]
    if not (R.contains(f0) and R.contains(f1)):
        raise PreconditionError("coefficients must lie in the order")
    if f0.is_zero():
        raise PreconditionError("constant term must be nonzero")
    if abs(f0.norm()) == 1:
        raise PreconditionError("unit constant term")
    branches = []
    surviving = []
    seen = set()
    for g0, h0 in nonunit_splits(f0, R):
        key = frozenset({associate_key(g0, R), associate_key(h0, R)})
        if key in seen:
            continue
        seen.add(key)
        S = R.lattice.scale(g0, field) + R.lattice.scale(h0, field)
        cert = non_membership_certificate(S, f1)
        entry = {"g0": g0, "h0": h0, "lattice": S, "solvable": cert is None, "certificate": cert}
        branches.append(entry)
        if cert is None:
            surviving.append(entry)
    return IrreducibilityCertificate(not surviving, branches, surviving)


# --- HFD violation witness -----------------------------------------------------------------

@dataclass
class HfdViolationWitness:
    m: int
    k: int
    exponent: int
    coefficients: list[FieldElement]
    all_in_order: bool
    left_length: int
    right_length_at_least: int


def hfd_violation_witness(
    f: TruncSeries, g: TruncSeries, a: FieldElement, b: FieldElement, J: OIdeal, R: OrderRing
) -> HfdViolationWitness:
    """Verify f^(mk) = g^(mk) (a+bx)^(mk) with (a+bx)^(mk) a polynomial over R.

    m is the least positive integer with m*a in I, k the least positive
    exponent with b^k in R.  Both searches are exhaustive from 1 upward, so
    minimality holds by construction.
    """
    field = R.field
    I = R.conductor
    lin = TruncSeries([a, b], f.trunc_degree)
    if ts_mul(g, lin) != f:
        raise PreconditionError("f is not g * (a + b x) at the working truncation")
    if not J.contains(a):
        raise PreconditionError("a does not lie in J")
    if not J.lattice.product(J.lattice, field).issubset(I.lattice):
        raise PreconditionError("I does not divide J^2")
    g0 = g.coeffs[0]
    if not R.contains(g0) or abs(g0.norm()) == 1:
        raise PreconditionError("g must be a nonunit of R[[x]]")
    O_size = field.maximal_order.index_of(I.lattice)
    m = next((m for m in range(1, O_size + 1) if I.contains(a * m)), None)
    if m is None:
        raise InvariantViolation("no multiple of a lies in the conductor")
    k = None
    power = field.one
    for e in range(1, O_size + 1):
        power = I.lattice.reduce(power * b)
        if R.contains(power):
            k = e
            break
    if k is None:
        raise GuardExceeded("no power of b lies in R (searched every residue class mod I)")
    N = m * k
    coeffs = []
    apow = [field.one]
    for _ in range(N):
        apow.append(apow[-1] * a)
    bpow = field.one
    for i in range(N + 1):
        coeffs.append(apow[N - i] * bpow * math.comb(N, i))
        bpow = bpow * b
    ok = all(R.contains(c) for c in coeffs)
    return HfdViolationWitness(m, k, N, coeffs, ok, N, N + 1)
