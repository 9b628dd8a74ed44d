"""Finite quotient rings A/J with enumeration and unit counting.

Elements are addressed by their Smith coordinates: if the modulus basis,
written in the ambient basis, has Smith form ``U M V = diag(d)``, then the
ambient coordinate vector ``c`` maps to ``c V mod d``.  Components with
``d_i = 1`` are dropped.  Enumeration runs through the box
``[0, d_1) x ... x [0, d_m)`` in lexicographic order, which also fixes the
integer encoding used by the vectorised routines.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from .config import PAIRWISE_UNIT_LIMIT, guard_size
from .errors import GuardExceeded, InputError, InvariantViolation, PreconditionError
from .field import FieldElement, FieldSpec
from .lattice import ZLattice, smith

_CHUNK = 256


class FiniteQuotient:
    """The finite ring ambient/modulus."""

    def __init__(self, field: FieldSpec, ambient: ZLattice, modulus: ZLattice):
        if not modulus.issubset(ambient):
            raise InputError("modulus not an ideal of ambient: not contained in it")
        self.field = field
        self.ambient = ambient
        self.modulus = modulus
        self._amb_elems = ambient.basis_elements(field)
        for a in self._amb_elems:
            for m in modulus.basis_elements(field):
                if not modulus.contains(a * m):
                    raise InputError("modulus not an ideal of ambient")
        coords = [ambient.express(m) for m in modulus.basis_elements(field)]
        diag, _, v, vinv = smith(coords)
        self._v = v
        keep = [i for i, d in enumerate(diag) if d != 1]
        self.snf = tuple(diag)
        self.moduli = tuple(diag[i] for i in keep)
        self._keep = keep
        # generators of the quotient, in ambient coordinates
        self._gens = [vinv[i] for i in keep]
        self.size = 1
        for d in self.moduli:
            self.size *= d
        if self.size != ambient.index_of(modulus):
            raise InvariantViolation("Smith diagonal disagrees with the lattice index")

    # --- coordinates ---------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.moduli)

    def coords(self, x: FieldElement) -> tuple[int, ...]:
        """Smith coordinates of an ambient element."""
        c = self.ambient.express(x)
        n = len(c)
        out = []
        for i, d in zip(self._keep, self.moduli):
            out.append(sum(c[k] * self._v[k][i] for k in range(n)) % d)
        return tuple(out)

    def lift(self, s: Sequence[int]) -> FieldElement:
        """A representative in the ambient lattice for Smith coordinates s."""
        n = self.ambient.n
        c = [0] * n
        for sk, g in zip(s, self._gens):
            if sk:
                c = [a + sk * b for a, b in zip(c, g)]
        out = self.field.zero
        for ck, b in zip(c, self._amb_elems):
            if ck:
                out = out + b * ck
        return out

    def encode(self, arr: np.ndarray) -> np.ndarray:
        """Mixed-radix integer code of Smith coordinate rows (first coordinate most significant)."""
        code = np.zeros(arr.shape[:-1], dtype=np.int64)
        for i, d in enumerate(self.moduli):
            code = code * d + arr[..., i]
        return code

    def all_elements(self) -> np.ndarray:
        """Every element as a row of Smith coordinates, in enumeration order."""
        if self.size > guard_size():
            raise GuardExceeded(f"quotient of size {self.size} exceeds the enumeration guard {guard_size()}")
        if self.rank == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.meshgrid(*[np.arange(d, dtype=np.int64) for d in self.moduli], indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1)

    @cached_property
    def _mod(self) -> np.ndarray:
        return np.array(self.moduli, dtype=np.int64)

    @cached_property
    def structure(self) -> np.ndarray:
        """table[k, l] = Smith coordinates of gen_k * gen_l."""
        m = self.rank
        gens = [self.lift([int(i == k) for i in range(m)]) for k in range(m)]
        table = np.zeros((m, m, m), dtype=np.int64)
        for k in range(m):
            for l in range(k, m):
                c = self.coords(gens[k] * gens[l])
                table[k, l] = c
                table[l, k] = c
        return table

    @cached_property
    def one(self) -> np.ndarray:
        return np.array(self.coords(self.field.one), dtype=np.int64)

    def mul_matrix(self, y) -> np.ndarray:
        """Matrix M with x*y = x @ M (mod moduli) for Smith rows x."""
        if isinstance(y, FieldElement):
            y = np.array(self.coords(y), dtype=np.int64)
        m = self.rank
        if m == 0:
            return np.zeros((0, 0), dtype=np.int64)
        mat = np.einsum("l,kli->ki", y, self.structure) % self._mod
        return mat

    def multiply_by(self, xs: np.ndarray, y) -> np.ndarray:
        if self.rank == 0:
            return xs
        return (xs @ self.mul_matrix(y)) % self._mod

    # --- units ----------------------------------------------------------------
    def _units_pairwise(self, elems: np.ndarray) -> np.ndarray:
        one_code = int(self.encode(self.one))
        flat = self.structure.reshape(self.rank, -1)
        is_unit = np.zeros(len(elems), dtype=bool)
        for start in range(0, len(elems), _CHUNK):
            xs = elems[start : start + _CHUNK]
            mats = (xs @ flat).reshape(len(xs), self.rank, self.rank) % self._mod
            prods = np.einsum("bl,cli->cbi", elems, mats) % self._mod
            is_unit[start : start + _CHUNK] = (self.encode(prods) == one_code).any(axis=1)
        return is_unit

    def _is_unit_lattice(self, x: FieldElement) -> bool:
        # x is a unit of A/J iff 1 lies in xA + J
        lat = ZLattice.from_elements([x * b for b in self._amb_elems] + self.modulus.basis_elements(self.field))
        return lat.contains(self.field.one)

    def unit_mask(self) -> np.ndarray:
        elems = self.all_elements()
        if self.rank == 0:
            return np.ones(1, dtype=bool)  # the zero ring: 0 = 1 is invertible
        if self.size <= PAIRWISE_UNIT_LIMIT:
            return self._units_pairwise(elems)
        return np.array([self._is_unit_lattice(self.lift(row)) for row in elems.tolist()], dtype=bool)

    def is_unit(self, x: FieldElement) -> bool:
        return self._is_unit_lattice(x)

    def __repr__(self):
        return f"FiniteQuotient(size={self.size}, moduli={self.moduli})"


def quotient_of(ambient: ZLattice, modulus: ZLattice, field: FieldSpec) -> FiniteQuotient:
    return FiniteQuotient(field, ambient, modulus)


def count_units(q: FiniteQuotient) -> int:
    """Number of units of the finite ring, by inverse search over the enumeration."""
    return int(q.unit_mask().sum())


def count_units_bijective(q: FiniteQuotient) -> int:
    """Independent count: elements whose multiplication map is injective (hence bijective)."""
    elems = q.all_elements()
    if q.rank == 0:
        return 1
    total = 0
    for row in elems:
        img = q.encode(q.multiply_by(elems, row))
        if len(np.unique(img)) == q.size:
            total += 1
    return total


def crt_split(q: FiniteQuotient, factors: Sequence) -> dict:
    """Check the CRT map R/I -> prod (R + F_i)/F_i for pairwise coprime F_i with product I.

    Returns a dict with the idempotent-style lifts ``alphas`` (alpha_i in R,
    alpha_i = 1 mod F_i, alpha_i = 0 mod F_j) when they exist, the size of the
    image, and the surjectivity verdict.  Injectivity always holds because the
    intersection of the F_i is I.
    """
    from .ideals import ideal_mul, is_coprime

    field = q.field
    factors = list(factors)
    if not factors:
        raise PreconditionError("need at least one factor")
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            if not is_coprime(factors[i], factors[j]):
                raise PreconditionError("factors are not pairwise coprime")
    prod = factors[0]
    for F in factors[1:]:
        prod = ideal_mul(prod, F)
    if prod.lattice != q.modulus:
        raise PreconditionError("factors do not multiply to the modulus")
    ring = q.ambient
    pieces = [FiniteQuotient(field, ring + F.lattice, F.lattice) for F in factors]
    elems = q.all_elements()
    lifts = [q.lift(row) for row in elems.tolist()]
    images = set()
    alphas: list[FieldElement | None] = [None] * len(factors)
    for x in lifts:
        key = tuple(piece.coords(x) for piece in pieces)
        images.add(key)
        for i, piece in enumerate(pieces):
            if alphas[i] is None and all(
                (piece2.coords(x) == tuple(piece2.one.tolist())) if k == i else not any(piece2.coords(x))
                for k, piece2 in enumerate(pieces)
            ):
                alphas[i] = x
    target = 1
    for piece in pieces:
        target *= piece.size
    return {
        "surjective": len(images) == target,
        "injective": len(images) == q.size,
        "image_size": len(images),
        "target_size": target,
        "alphas": alphas,
    }
