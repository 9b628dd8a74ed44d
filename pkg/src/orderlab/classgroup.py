"""Principality of ideals of the maximal order and the class map on primes.

Generators are looked up rather than derived:

* quadratic fields solve the binary norm form exactly, with coordinate bounds
  that cover at least one generator of every principal ideal;
* higher degree fields scan a fixed coefficient box over the integral basis,
  tabulated once per field and sorted by absolute norm.

Non-principality is never inferred from a failed search alone.  For a field
of prime class number h, a reference prime C whose search fails is certified
non-principal once every prime under the Minkowski bound is shown to satisfy
``P * C^k`` principal for some k: if C were principal all those primes would
be, forcing h = 1.  Each prime P then carries a relation ``P * C^k = (r)``,
and generators of principal products are assembled from these relations.
"""

from __future__ import annotations

import bisect
import math
from fractions import Fraction
from functools import cached_property

import numpy as np
import sympy

from .config import DEFAULT_PRINCIPAL_BOX
from .errors import Inconclusive, InputError, InvariantViolation, UnsupportedError
from .field import FieldElement, FieldSpec
from .ideals import OIdeal, PrimeIdeal, _field_cache, ideal_mul, ideal_pow, principal_ideal, split_prime

# rational upper bound for 4/pi
FOUR_OVER_PI_UP = Fraction(12733, 10000)


def minkowski_bound(field: FieldSpec) -> int:
    """An integer upper bound for the Minkowski constant of the field."""
    n = field.degree
    _, r2 = field.signature
    root = math.isqrt(abs(field.discriminant)) + 1
    bound = FOUR_OVER_PI_UP**r2 * Fraction(math.factorial(n), n**n) * root
    return math.floor(bound)


def _det_stack(mats: np.ndarray) -> np.ndarray:
    """Exact determinants of a stack of small integer matrices (Laplace expansion)."""
    n = mats.shape[-1]
    if n == 1:
        return mats[..., 0, 0]
    out = 0
    for j in range(n):
        minor = np.delete(np.delete(mats, 0, axis=-2), j, axis=-1)
        term = mats[..., 0, j] * _det_stack(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


class _NormBox:
    """All elements of a coefficient box over the integral basis, sorted by |norm|."""

    def __init__(self, field: FieldSpec, height: int):
        n = field.degree
        self.field = field
        self.height = height
        # multiplication matrices of the maximal basis, scaled to integers
        bas = field.maximal_elements
        den = math.lcm(*(b.den for b in bas))
        self.basis_den = den
        self.basis_int = np.array([[x * (den // b.den) for x in b.nums] for b in bas], dtype=object)
        mult = [b.mult_matrix() for b in bas]
        mden = math.lcm(*(x.denominator for m in mult for row in m for x in row))
        mats = [[[int(x * mden) for x in row] for row in m] for m in mult]
        rng = np.arange(-height, height + 1, dtype=np.int64)
        grid = np.stack([g.ravel() for g in np.meshgrid(*([rng] * n), indexing="ij")], axis=1)
        mx = max(abs(x) for m in mats for row in m for x in row)
        entry_bound = n * height * mx
        dtype = np.int64 if math.factorial(n) * entry_bound**n < 2**62 else object
        coeff = grid.astype(dtype)
        tensor = np.array(mats, dtype=dtype)  # (n, n, n)
        stack = np.einsum("ek,kij->eij", coeff, tensor)
        norms = _det_stack(stack)
        absn = np.abs(norms)
        scale = mden**n
        # element norm = det / mden^n; it is an integer for integral elements
        if dtype is object:
            absn = np.array([int(v) // scale for v in absn], dtype=object)
        else:
            absn = absn // scale
        height_of = np.abs(grid).max(axis=1)
        keep = absn != 0
        grid, absn, height_of = grid[keep], absn[keep], height_of[keep]
        if dtype is object:
            rows = grid.tolist()
            order = sorted(range(len(rows)), key=lambda i: (int(absn[i]), int(height_of[i]), rows[i]))
            order = np.array(order, dtype=np.int64)
            self._keys = [int(absn[i]) for i in order]
        else:
            order = np.lexsort(tuple(grid[:, i] for i in range(n - 1, -1, -1)) + (height_of, absn))
            self._keys = None
        self.coords = grid[order]
        self.absnorm = absn[order]

    def candidates(self, norm: int) -> np.ndarray:
        if self._keys is not None:
            lo = bisect.bisect_left(self._keys, norm)
            hi = bisect.bisect_right(self._keys, norm)
        else:
            lo = int(np.searchsorted(self.absnorm, norm, side="left"))
            hi = int(np.searchsorted(self.absnorm, norm, side="right"))
        return self.coords[lo:hi]

    def find(self, ideal: OIdeal) -> FieldElement | None:
        cands = self.candidates(ideal.norm)
        if len(cands) == 0:
            return None
        field = self.field
        # map maximal-basis coordinates into coordinates over the ideal's HNF basis
        hnf = [[Fraction(x, ideal.lattice.den) for x in r] for r in ideal.lattice.hnf]
        inv = sympy.Matrix(hnf).inv()
        bas = sympy.Matrix([[Fraction(x, b.den) for x in b.nums] for b in field.maximal_elements])
        t = bas * inv
        L = math.lcm(*(int(sympy.fraction(x)[1]) for x in t))
        t_int = np.array([[int(x * L) for x in row] for row in t.tolist()], dtype=object)
        big = max(abs(int(x)) for x in t_int.ravel()) * self.height * field.degree
        if big < 2**62:
            y = cands @ t_int.astype(np.int64)
        else:
            y = cands.astype(object) @ t_int
        ok = np.all(y % L == 0, axis=1)
        hits = np.nonzero(ok)[0]
        if len(hits) == 0:
            return None
        c = cands[int(hits[0])].tolist()
        out = field.zero
        for ci, b in zip(c, field.maximal_elements):
            if ci:
                out = out + b * int(ci)
        return out


def _quadratic_find(field: FieldSpec, ideal: OIdeal) -> FieldElement | None:
    """Exact search for a generator of an ideal in a quadratic field with integral basis {1, w}."""
    b0, b1 = field.maximal_elements
    A = int(b0.norm())
    C = int(b1.norm())
    B = int((b0 + b1).norm()) - A - C
    disc = field.discriminant
    N = ideal.norm
    if disc < 0:
        vmax = math.isqrt(4 * A * N // (-disc)) + 1
    else:
        eps = field.fundamental_units[0]
        tr = abs(int(eps.trace()))
        vmax = ((tr + 2) * (math.isqrt(N) + 1)) // max(1, math.isqrt(disc)) + 1
    for v in sorted(range(-vmax, vmax + 1), key=lambda t: (abs(t), -t)):
        for target in (N, -N) if disc > 0 else (N,):
            # A u^2 + B v u + (C v^2 - target) = 0
            dd = B * B * v * v - 4 * A * (C * v * v - target)
            if dd < 0:
                continue
            s = math.isqrt(dd)
            if s * s != dd:
                continue
            for num in (-B * v + s, -B * v - s):
                if num % (2 * A):
                    continue
                u = num // (2 * A)
                x = b0 * u + b1 * v
                if ideal.contains(x):
                    return x
    return None


class ClassMap:
    """Ideal classes for a field with trivial or prime-order cyclic class group."""

    def __init__(self, field: FieldSpec, box_height: int = DEFAULT_PRINCIPAL_BOX):
        self.field = field
        self.h = field.class_number
        self.box_height = box_height
        if self.h > 1 and not sympy.isprime(self.h):
            raise UnsupportedError("class map implemented only for trivial or prime-order class groups")
        self._relations: dict[PrimeIdeal, tuple[int, FieldElement]] = {}
        self._deduced: dict[PrimeIdeal, int] = {}
        self._gen_cache: dict = {}

    @cached_property
    def _box(self) -> _NormBox:
        return _NormBox(self.field, self.box_height)

    def search_generator(self, ideal: OIdeal) -> FieldElement | None:
        """Bounded search only: a generator, or None when none was found."""
        key = ideal.lattice
        if key in self._gen_cache:
            return self._gen_cache[key]
        g = None
        if ideal.is_unit_ideal():
            g = self.field.one
        elif isinstance(ideal, PrimeIdeal):
            # the two generators themselves are the cheapest candidates
            for cand in (self.field.rational(ideal.p), ideal.gen):
                if abs(cand.norm()) == ideal.norm and ideal.contains(cand):
                    g = cand
                    break
        if g is not None:
            pass
        elif self.field.degree == 2 and self.field.maximal_elements[0] == self.field.one:
            g = _quadratic_find(self.field, ideal)
        else:
            g = self._box.find(ideal)
        self._gen_cache[key] = g
        return g

    # --- reference class ---------------------------------------------------------
    @cached_property
    def reference(self) -> tuple[OIdeal, FieldElement]:
        """(C, gamma) with C a certified generator of the class group and C^h = (gamma)."""
        field = self.field
        one = OIdeal.unit(field)
        if self.h == 1:
            return one, field.one
        M = minkowski_bound(field)
        small = []
        for p in sympy.primerange(2, M + 1):
            for P in split_prime(int(p), field):
                if P.norm <= M:
                    small.append(P)
        ref = None
        for P in small:
            if self.search_generator(P) is None:
                ref = P
                break
        if ref is None:
            raise InputError("class data inconsistent: every prime under the Minkowski bound is principal")
        gamma = self.search_generator(ideal_pow(ref, self.h))
        if gamma is None:
            raise Inconclusive(f"no generator found for the {self.h}-th power of the reference prime")
        self.__dict__["reference"] = (ref, gamma)  # relations below need it
        for P in small:
            self.relation(P)  # raises Inconclusive if some small prime has no relation
        return ref, gamma

    def relation(self, P: PrimeIdeal) -> tuple[int, FieldElement]:
        """(k, r) with P * C^k = (r), 0 <= k < h."""
        if P in self._relations:
            return self._relations[P]
        C, _ = self.reference
        piece = P
        for k in range(max(1, self.h)):
            g = self.search_generator(piece)
            if g is not None:
                self._relations[P] = (k, g)
                return k, g
            piece = ideal_mul(piece, C)
        raise Inconclusive(f"principality inconclusive: no class relation found for {P}")

    def prime_class(self, P: PrimeIdeal) -> int:
        if self.h == 1:
            return 0
        if P in self._deduced:
            return self._deduced[P]
        k, _ = self.relation(P)
        return (-k) % self.h

    def note_principal(self, alpha: FieldElement) -> None:
        """Use the principal ideal (alpha) to pin down the class of a single unresolved prime."""
        if self.h == 1:
            return
        known = 0
        unknown = []
        for P, e in principal_ideal(alpha).factorization:
            try:
                known += e * self.prime_class(P)
            except Inconclusive:
                unknown.append((P, e))
        if len(unknown) == 1:
            P, e = unknown[0]
            # e * c = -known (mod h); h prime, so solvable when h does not divide e
            if e % self.h:
                self._deduced[P] = (-known * pow(e, -1, self.h)) % self.h

    def ideal_class(self, ideal: OIdeal) -> int:
        if self.h == 1:
            return 0
        return sum(e * self.prime_class(P) for P, e in ideal.factorization) % self.h

    def generator(self, ideal: OIdeal) -> FieldElement | None:
        """A generator of ideal, or None when it is certified non-principal."""
        if self.ideal_class(ideal) != 0:
            return None
        g = self.search_generator(ideal)
        if g is not None:
            return g
        _, gamma = self.reference
        num = self.field.one
        total_k = 0
        for P, e in ideal.factorization:
            k, r = self.relation(P)
            num = num * r**e
            total_k += k * e
        if self.h > 1:
            if total_k % self.h:
                raise InvariantViolation("class bookkeeping out of step")
            num = num / gamma ** (total_k // self.h)
        if principal_ideal(num) != ideal:
            raise InvariantViolation("assembled generator does not generate the ideal")
        self._gen_cache[ideal.lattice] = num
        return num


def class_map(field: FieldSpec, box_height: int = DEFAULT_PRINCIPAL_BOX) -> ClassMap:
    cache = _field_cache(field)
    key = ("classmap", box_height)
    if key not in cache:
        cache[key] = ClassMap(field, box_height)
    return cache[key]


def is_principal(ideal: OIdeal) -> tuple[bool, FieldElement | None]:
    g = class_map(ideal.field).generator(ideal)
    return g is not None, g


def ideal_class_order(ideal: OIdeal) -> int:
    """Order of the class of ideal, tested on successive powers."""
    cm = class_map(ideal.field)
    for k in range(1, cm.h + 1):
        if cm.generator(ideal_pow(ideal, k)) is not None:
            return k
    raise InvariantViolation("class order exceeds the class number")
