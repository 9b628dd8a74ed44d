"""Full-rank Z-lattices in a number field.

A lattice is stored as ``den`` plus a lower-triangular integer matrix in
canonical row Hermite normal form over the power basis: row ``i`` has its
positive pivot in column ``i`` and zeros to the right, and every entry below a
pivot is reduced into ``[0, pivot)``.  Two lattices are equal exactly when
their ``(den, hnf)`` pairs are equal.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, PreconditionError


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def echelon(rows: Iterable[Sequence[int]], ncols: int) -> tuple[list[list[int] | None], list[list[int]]]:
    """Integer row reduction on the first ``ncols`` columns, last column first.

    Rows may be longer than ``ncols``; the extra columns are carried along
    untouched by the pivot choice, which is how kernels and Bezout
    combinations are read off.  Returns ``(pivots, rest)`` where
    ``pivots[c]`` is the row whose last nonzero entry among the first
    ``ncols`` columns sits at ``c`` (or None), and ``rest`` are rows that are
    zero on those columns.
    """
    work = [list(r) for r in rows]
    pivots: list[list[int] | None] = [None] * ncols
    for col in range(ncols - 1, -1, -1):
        active = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        if active:
            p = active[0]
            if p[col] < 0:
                p = [-a for a in p]
            pivots[col] = p
        work = rest
    return pivots, work


def _reduce_below(h: list[list[int]]) -> None:
    n = len(h)
    for i in range(n):
        for j in range(i - 1, -1, -1):
            q = h[i][j] // h[j][j]
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[j])]


def hnf(rows: Iterable[Sequence[int]], n: int) -> list[list[int]]:
    """Canonical lower-triangular HNF of the Z-span of ``rows`` (must be rank n)."""
    pivots, _ = echelon(rows, n)
    if any(p is None for p in pivots):
        raise InputError("generators do not span a full-rank lattice")
    h = [list(p[:n]) for p in pivots]  # type: ignore[index]
    _reduce_below(h)
    return h


def det_lower(h: Sequence[Sequence[int]]) -> int:
    out = 1
    for i, row in enumerate(h):
        out *= row[i]
    return out


def smith(m: Sequence[Sequence[int]]):
    """Smith normal form of a nonsingular square integer matrix.

    Returns ``(diag, U, V, Vinv)`` with ``U * m * V = diag(diag)``, U and V
    unimodular, and ``diag[i]`` dividing ``diag[i+1]``.
    """
    n = len(m)
    a = [list(r) for r in m]
    eye = lambda: [[int(i == j) for j in range(n)] for i in range(n)]  # noqa: E731
    u, v, vinv = eye(), eye(), eye()

    def row_add(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def col_add(dst, src, q):  # col_dst += q * col_src
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]
        vinv[src] = [x - q * y for x, y in zip(vinv[src], vinv[dst])]

    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                raise InputError("singular matrix has no full Smith form")
            i, j = best
            if i != t:
                a[i], a[t] = a[t], a[i]
                u[i], u[t] = u[t], u[i]
            if j != t:
                for r in a:
                    r[j], r[t] = r[t], r[j]
                for r in v:
                    r[j], r[t] = r[t], r[j]
                vinv[j], vinv[t] = vinv[t], vinv[j]
            p = a[t][t]
            for i in range(t + 1, n):
                q = a[i][t] // p
                if q:
                    row_add(i, t, -q)
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    col_add(j, t, -q)
            if any(a[i][t] for i in range(t + 1, n)) or any(a[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is not None:
                row_add(t, bad, 1)
                continue
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return [a[i][i] for i in range(n)], u, v, vinv


def _lcm_den(values: Iterable[Fraction]) -> int:
    out = 1
    for f in values:
        out = out * f.denominator // math.gcd(out, f.denominator)
    return out


class ZLattice:
    """Immutable full-rank lattice ``(1/den) * rowspan(hnf)``."""

    __slots__ = ("den", "hnf", "n", "_hash")

    def __init__(self, den: int, rows: Sequence[Sequence[int]]):
        self.den = den
        self.hnf = tuple(tuple(r) for r in rows)
        self.n = len(self.hnf)
        self._hash = hash((self.den, self.hnf))

    # --- construction ------------------------------------------------------
    @classmethod
    def from_int_rows(cls, rows: Iterable[Sequence[int]], den: int = 1, n: int | None = None) -> "ZLattice":
        rows = [list(r) for r in rows]
        if n is None:
            if not rows:
                raise InputError("no generators given")
            n = len(rows[0])
        h = hnf(rows, n)
        g = den
        for r in h:
            g = math.gcd(g, *r)
        if g > 1:
            h = [[x // g for x in r] for r in h]
            den //= g
        return cls(den, h)

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[Fraction]]) -> "ZLattice":
        vecs = [[Fraction(x) for x in v] for v in vectors]
        if not vecs:
            raise InputError("no generators given")
        den = _lcm_den(x for v in vecs for x in v)
        rows = [[int(x * den) for x in v] for v in vecs]
        return cls.from_int_rows(rows, den, len(vecs[0]))

    @classmethod
    def from_elements(cls, elements: Iterable) -> "ZLattice":
        elements = list(elements)
        if not elements:
            raise InputError("no generators given")
        n = elements[0].field.degree
        den = math.lcm(*(e.den for e in elements))
        rows = [[x * (den // e.den) for x in e.nums] for e in elements]
        return cls.from_int_rows(rows, den, n)

    # --- views --------------------------------------------------------------
    def basis_vectors(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.den) for x in r] for r in self.hnf]

    def basis_elements(self, field) -> list:
        from .field import FieldElement

        return [FieldElement(field, r, self.den) for r in self.hnf]

    @property
    def volume(self) -> Fraction:
        """Covolume relative to the power-basis lattice Z^n."""
        return Fraction(det_lower(self.hnf), self.den**self.n)

    def dump(self) -> str:
        lines = [f"den={self.den}"]
        lines += [" ".join(str(x) for x in r) for r in self.hnf]
        return "\n".join(lines)

    def __eq__(self, other):
        if not isinstance(other, ZLattice):
            return NotImplemented
        return self.den == other.den and self.hnf == other.hnf

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ZLattice(den={self.den}, hnf={self.hnf})"

    # --- scaling helpers ------------------------------------------------------
    def _scaled(self, den: int) -> list[list[int]]:
        s = den // self.den
        return [[x * s for x in r] for r in self.hnf]

    def _check_dim(self, other: "ZLattice") -> None:
        if self.n != other.n:
            raise InputError("lattices live in different dimensions")

    # --- membership ------------------------------------------------------------
    def _int_target(self, nums: Sequence[int], den: int) -> tuple[list[list[int]], list[int], int]:
        common = math.lcm(self.den, den)
        rows = self._scaled(common)
        v = [x * (common // den) for x in nums]
        return rows, v, common

    def coords_of(self, nums: Sequence[int], den: int = 1) -> list[Fraction]:
        """Rational coordinates of the vector ``nums/den`` in the HNF basis."""
        if len(nums) != self.n:
            raise InputError("dimension mismatch")
        rows, v, _ = self._int_target(nums, den)
        y: list[Fraction] = [Fraction(0)] * self.n
        rem = [Fraction(x) for x in v]
        for i in range(self.n - 1, -1, -1):
            c = rem[i] / rows[i][i]
            y[i] = c
            if c:
                rem = [a - c * b for a, b in zip(rem, rows[i])]
        return y

    def contains_vector(self, nums: Sequence[int], den: int = 1) -> bool:
        if len(nums) != self.n:
            raise InputError("dimension mismatch")
        rows, v, _ = self._int_target(nums, den)
        for i in range(self.n - 1, -1, -1):
            if v[i] % rows[i][i]:
                return False
            q = v[i] // rows[i][i]
            if q:
                v = [a - q * b for a, b in zip(v, rows[i])]
        return True

    def contains(self, x) -> bool:
        return self.contains_vector(x.nums, x.den)

    def express(self, x) -> list[int]:
        """Integer coordinates of ``x`` in the HNF basis; PreconditionError if x is not in the lattice."""
        y = self.coords_of(x.nums, x.den)
        if any(c.denominator != 1 for c in y):
            raise PreconditionError("element is not in the lattice")
        return [int(c) for c in y]

    def reduce_vector(self, nums: Sequence[int], den: int = 1) -> tuple[list[int], int]:
        """Canonical representative of ``nums/den`` modulo the lattice.

        The result lies in the half-open box spanned by the pivots, so two
        vectors reduce to the same output exactly when they differ by a
        lattice vector.
        """
        rows, v, common = self._int_target(nums, den)
        for i in range(self.n - 1, -1, -1):
            q = v[i] // rows[i][i]
            if q:
                v = [a - q * b for a, b in zip(v, rows[i])]
        return v, common

    def reduce(self, x):
        from .field import FieldElement

        v, common = self.reduce_vector(x.nums, x.den)
        return FieldElement(x.field, v, common)

    def issubset(self, other: "ZLattice") -> bool:
        """True when self is contained in other."""
        self._check_dim(other)
        return all(other.contains_vector(r, self.den) for r in self.hnf)

    def __le__(self, other: "ZLattice") -> bool:
        return self.issubset(other)

    def index_of(self, sub: "ZLattice") -> int:
        """[self : sub]; requires sub to be contained in self."""
        if not sub.issubset(self):
            raise PreconditionError("index requested for a lattice that is not a sublattice")
        q = sub.volume / self.volume
        if q.denominator != 1:
            raise PreconditionError("non-integral index")
        return int(q)

    # --- lattice algebra -------------------------------------------------------
    def __add__(self, other: "ZLattice") -> "ZLattice":
        self._check_dim(other)
        den = math.lcm(self.den, other.den)
        return ZLattice.from_int_rows(self._scaled(den) + other._scaled(den), den, self.n)

    def intersect(self, other: "ZLattice") -> "ZLattice":
        """Zassenhaus: reduce rows [a|a], [b|0] on the first block; leftovers span A & B."""
        self._check_dim(other)
        n = self.n
        den = math.lcm(self.den, other.den)
        rows = [r + r for r in self._scaled(den)] + [r + [0] * n for r in other._scaled(den)]
        _, rest = echelon(rows, n)
        return ZLattice.from_int_rows([r[n:] for r in rest], den, n)

    __and__ = intersect

    def scale(self, c, field) -> "ZLattice":
        """The lattice c * self for a nonzero field element c."""
        return ZLattice.from_elements([b * c for b in self.basis_elements(field)])

    def product(self, other: "ZLattice", field) -> "ZLattice":
        a = self.basis_elements(field)
        b = other.basis_elements(field)
        return ZLattice.from_elements([x * y for x in a for y in b])

    def colon(self, other: "ZLattice", field) -> "ZLattice":
        """(self : other) = {x in K : x * other is contained in self}."""
        result = None
        for b in other.basis_elements(field):
            piece = self.scale(b.inverse(), field)
            result = piece if result is None else result.intersect(piece)
        return result

    def bezout_split(self, other: "ZLattice", target, field):
        """Write ``target = e1 + e2`` with e1 in self and e2 in other, or raise."""
        self._check_dim(other)
        n = self.n
        den = math.lcm(self.den, other.den, target.den)
        rows = [r + r for r in self._scaled(den)] + [r + [0] * n for r in other._scaled(den)]
        pivots, _ = echelon(rows, n)
        v = [x * (den // target.den) for x in target.nums] + [0] * n
        for i in range(n - 1, -1, -1):
            if v[i] == 0:
                continue
            p = pivots[i]
            if p is None or v[i] % p[i]:
                raise PreconditionError("target is not in the sum of the two lattices")
            q = v[i] // p[i]
            v = [a - q * b for a, b in zip(v, p)]
        from .field import FieldElement

        # v[n:] now holds minus the self-part of the combination
        e1 = FieldElement(field, [-x for x in v[n:]], den)
        return e1, target - e1


def lat_from_generators(gens: Sequence) -> ZLattice:
    return ZLattice.from_elements(gens)


def lat_sum(a: ZLattice, b: ZLattice) -> ZLattice:
    return a + b


def lat_intersect(a: ZLattice, b: ZLattice) -> ZLattice:
    return a.intersect(b)


def lat_product(a: ZLattice, b: ZLattice, field) -> ZLattice:
    return a.product(b, field)


def lat_colon(a: ZLattice, b: ZLattice, field) -> ZLattice:
    return a.colon(b, field)


def lat_contains(a: ZLattice, x) -> bool:
    return a.contains(x)


def lat_subset(a: ZLattice, b: ZLattice) -> bool:
    """True when a is contained in b."""
    return a.issubset(b)


def lat_index(a: ZLattice, b: ZLattice) -> int:
    """[a : b] for b contained in a."""
    return a.index_of(b)
