"""Exact arithmetic in a number field K = Q[t]/(f).

Elements are stored over the power basis 1, t, ..., t^(n-1) as an integer
vector with one positive common denominator, always in lowest terms.
Multiplication is polynomial multiplication followed by reduction modulo the
monic minimal polynomial, so nothing is ever rounded.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DomainError, InputError

MAX_DEGREE = 4

FIELD_KEYS = frozenset(
    {
        "min_poly",
        "maximal_basis",
        "class_number",
        "class_group",
        "fundamental_units",
        "torsion_order",
        "label",
    }
)


def parse_rational(value) -> Fraction:
    """Parse an int, Fraction or a string ``"p/q"`` into a Fraction."""
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def _det_int(rows: Sequence[Sequence[int]]) -> int:
    # Bareiss fraction-free elimination
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _solve_rational(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve y . M = rhs for a row vector y (M square, invertible)."""
    n = len(rows)
    # transpose so we solve M^T y^T = rhs^T by Gauss-Jordan
    a = [[Fraction(rows[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise DomainError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def _has_rational_root(coeffs: Sequence[int]) -> bool:
    # monic, so rational roots are integer divisors of the constant term
    c0 = coeffs[0]
    if c0 == 0:
        return True
    for d in _divisors(abs(c0)):
        for r in (d, -d):
            if sum(c * r**i for i, c in enumerate(coeffs)) == 0:
                return True
    return False


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _quartic_has_quadratic_factor(coeffs: Sequence[int]) -> bool:
    """Exhaustive search for (x^2+bx+c)(x^2+b'x+c') = f over Z.

    By Gauss's lemma a monic quartic with no rational root is reducible iff it
    splits into two monic integer quadratics; c ranges over divisors of the
    constant term and b is then a root of an integer quadratic, so the search
    is finite and complete.
    """
    a0, a1, a2, a3, _ = coeffs
    for d in _divisors(abs(a0)):
        for c in (d, -d):
            c2 = a0 // c
            # b*b' = a2 - c - c2 with b + b' = a3  =>  b^2 - a3 b + (a2 - c - c2) = 0
            disc = a3 * a3 - 4 * (a2 - c - c2)
            if disc < 0:
                continue
            s = math.isqrt(disc)
            if s * s != disc:
                continue
            for num in (a3 + s, a3 - s):
                if num % 2:
                    continue
                b = num // 2
                b2 = a3 - b
                if b * c2 + b2 * c == a1:
                    return True
    return False


class FieldElement:
    """An element of a number field, immutable and hashable."""

    __slots__ = ("field", "nums", "den")

    def __init__(self, field: "FieldSpec", nums: Sequence[int], den: int = 1):
        if den == 0:
            raise DomainError("zero denominator")
        if len(nums) != field.degree:
            raise InputError(f"expected {field.degree} coordinates, got {len(nums)}")
        if den < 0:
            nums = [-x for x in nums]
            den = -den
        g = math.gcd(den, *nums)
        if g > 1:
            nums = [x // g for x in nums]
            den //= g
        self.field = field
        self.nums = tuple(int(x) for x in nums)
        self.den = int(den)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    # --- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise InputError("elements belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        den = self.den * other.den // math.gcd(self.den, other.den)
        sa, sb = den // self.den, den // other.den
        return FieldElement(self.field, [a * sa + b * sb for a, b in zip(self.nums, other.nums)], den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.nums], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._mul_vec(self.nums, other.nums), self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.nums == other.nums and self.den == other.den

    def __hash__(self):
        return hash((id(self.field), self.nums, self.den))

    # --- invariants ------------------------------------------------------
    def mult_matrix(self) -> list[list[Fraction]]:
        """Rows are the coordinates of self * t^i over the power basis."""
        return [[Fraction(x, self.den) for x in row] for row in self.field._mult_rows(self.nums)]

    def norm(self) -> Fraction:
        det = _det_int(self.field._mult_rows(self.nums))
        return Fraction(det, self.den**self.field.degree)

    def trace(self) -> Fraction:
        rows = self.field._mult_rows(self.nums)
        return Fraction(sum(rows[i][i] for i in range(len(rows))), self.den)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DomainError("zero has no inverse")
        rows = self.field._mult_rows(self.nums)
        n = self.field.degree
        rhs = [Fraction(1)] + [Fraction(0)] * (n - 1)
        y = _solve_rational(rows, rhs)
        # y . (self.nums-rows) = e0, self = nums/den  =>  inverse = den * y
        return self.field.element([c * self.den for c in y])

    # --- display ---------------------------------------------------------
    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coords]

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        return format_poly(self.coords, self.field.var)


def format_poly(coords: Sequence[Fraction], var: str = "a") -> str:
    terms = []
    for i, c in enumerate(coords):
        if c == 0:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class FieldSpec:
    """A number field with ingested maximal-order, class-group and unit data.

    The maximal order is given by an integral basis over the power basis; it is
    trusted input, but ring closure, unit norms and the unit rank are checked
    on construction.
    """

    var = "a"

    def __init__(
        self,
        min_poly: Sequence[int],
        maximal_basis: Sequence[Sequence],
        class_number: int,
        class_group: Sequence[int],
        fundamental_units: Sequence[Sequence],
        torsion_order: int,
        label: str = "",
        *,
        validate: bool = True,
    ):
        poly = [int(c) for c in min_poly]
        if any(not isinstance(c, int) or isinstance(c, bool) for c in min_poly):
            raise InputError("min_poly must hold integers")
        n = len(poly) - 1
        if n < 2:
            raise InputError("degree must be at least 2")
        if n > MAX_DEGREE:
            raise InputError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")
        if poly[-1] != 1:
            raise InputError("min_poly must be monic")
        self.min_poly = tuple(poly)
        self.degree = n
        self.label = str(label)
        if len(maximal_basis) != n or any(len(row) != n for row in maximal_basis):
            raise InputError(f"maximal_basis must be {n} rows of {n} rationals")
        self.maximal_basis = tuple(tuple(parse_rational(x) for x in row) for row in maximal_basis)
        if not isinstance(class_number, int) or class_number < 1:
            raise InputError("class_number must be a positive integer")
        self.class_number = class_number
        self.class_group = tuple(int(c) for c in class_group)
        if not isinstance(torsion_order, int) or torsion_order < 1:
            raise InputError("torsion_order must be a positive integer")
        self.torsion_order = torsion_order
        self.fundamental_units = tuple(self.element([parse_rational(x) for x in u]) for u in fundamental_units)
        if validate:
            self.validate()

    # --- construction helpers --------------------------------------------
    def element(self, coords: Iterable) -> FieldElement:
        fracs = [parse_rational(c) for c in coords]
        if len(fracs) != self.degree:
            raise InputError(f"expected {self.degree} coordinates, got {len(fracs)}")
        den = math.lcm(*(f.denominator for f in fracs))
        return FieldElement(self, [f.numerator * (den // f.denominator) for f in fracs], den)

    def rational(self, q) -> FieldElement:
        q = Fraction(q)
        return FieldElement(self, [q.numerator] + [0] * (self.degree - 1), q.denominator)

    @cached_property
    def one(self) -> FieldElement:
        return self.rational(1)

    @cached_property
    def zero(self) -> FieldElement:
        return self.rational(0)

    @cached_property
    def gen(self) -> FieldElement:
        return FieldElement(self, [0, 1] + [0] * (self.degree - 2))

    def parse(self, text: str) -> FieldElement:
        return parse_element(self, text)

    # --- polynomial arithmetic mod f ---------------------------------------
    def _reduce(self, prod: list[int]) -> list[int]:
        n = self.degree
        f = self.min_poly
        for k in range(len(prod) - 1, n - 1, -1):
            c = prod[k]
            if c:
                base = k - n
                for i in range(n):
                    prod[base + i] -= c * f[i]
                prod[k] = 0
        return prod[:n]

    def _mul_vec(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        n = self.degree
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self._reduce(prod)

    def _mult_rows(self, nums: Sequence[int]) -> list[list[int]]:
        rows = [list(nums)]
        for _ in range(self.degree - 1):
            prev = rows[-1]
            shifted = [0] + prev  # multiply by t
            rows.append(self._reduce(shifted))
        return rows

    # --- derived data ------------------------------------------------------
    @cached_property
    def maximal_elements(self) -> tuple[FieldElement, ...]:
        return tuple(self.element(row) for row in self.maximal_basis)

    @cached_property
    def maximal_order(self):
        from .lattice import ZLattice

        return ZLattice.from_elements(self.maximal_elements)

    @cached_property
    def index(self) -> int:
        """[O : Z[t]], read off from the maximal-order lattice."""
        from .lattice import ZLattice

        power = ZLattice.from_elements([self.one, *[self.gen**i for i in range(1, self.degree)]])
        return self.maximal_order.index_of(power)

    @cached_property
    def signature(self) -> tuple[int, int]:
        import sympy

        x = sympy.Symbol("x")
        r1 = int(sympy.Poly(list(reversed(self.min_poly)), x).count_roots())
        return r1, (self.degree - r1) // 2

    @property
    def unit_rank(self) -> int:
        r1, r2 = self.signature
        return r1 + r2 - 1

    @cached_property
    def poly_discriminant(self) -> int:
        import sympy

        x = sympy.Symbol("x")
        return int(sympy.discriminant(sympy.Poly(list(reversed(self.min_poly)), x)))

    @cached_property
    def discriminant(self) -> int:
        """Discriminant of the maximal order."""
        q = Fraction(self.poly_discriminant, self.index**2)
        if q.denominator != 1:
            raise InputError("maximal basis inconsistent with the polynomial discriminant")
        return int(q)

    @cached_property
    def torsion_generator(self) -> FieldElement:
        w = self.torsion_order
        if w == 1:
            return self.one
        if w == 2:
            return -self.one
        prime_divs = [p for p in range(2, w + 1) if w % p == 0 and all(p % q for q in range(2, p))]
        from itertools import product

        basis = self.maximal_elements
        for height in range(1, 4):
            for coeffs in product(range(-height, height + 1), repeat=self.degree):
                if max(abs(c) for c in coeffs) != height:
                    continue
                z = self.zero
                for c, b in zip(coeffs, basis):
                    if c:
                        z = z + b * c
                if abs(z.norm()) != 1:
                    continue
                if z**w == self.one and all(z ** (w // p) != self.one for p in prime_divs):
                    return z
        raise InputError(f"no primitive root of unity of order {w} found in the maximal order")

    # --- validation ----------------------------------------------------------
    def validate(self) -> None:
        n = self.degree
        if n <= 3:
            if _has_rational_root(self.min_poly):
                raise InputError("min_poly is reducible over Q")
        else:
            if _has_rational_root(self.min_poly) or _quartic_has_quadratic_factor(self.min_poly):
                raise InputError("min_poly is reducible over Q")
        lat = self.maximal_order  # raises if rank deficient
        if not lat.contains(self.one):
            raise InputError("maximal_basis lattice does not contain 1")
        for a in self.maximal_elements:
            for b in self.maximal_elements:
                if not lat.contains(a * b):
                    raise InputError("maximal_basis does not span a ring")
        if not lat.contains(self.gen):
            raise InputError("maximal_basis does not contain the generator")
        prod = 1
        for c in self.class_group:
            if c < 1:
                raise InputError("class_group factors must be positive")
            prod *= c
        if prod != self.class_number:
            raise InputError("class_group does not multiply to class_number")
        for a, b in zip(self.class_group, self.class_group[1:]):
            if b % a:
                raise InputError("class_group must be given by invariant factors")
        for u in self.fundamental_units:
            if abs(u.norm()) != 1:
                raise InputError(f"fundamental unit {u} does not have norm +-1")
            if not lat.contains(u):
                raise InputError(f"fundamental unit {u} is not integral")
        if len(self.fundamental_units) != self.unit_rank:
            raise InputError(
                f"expected {self.unit_rank} fundamental units for signature {self.signature}, "
                f"got {len(self.fundamental_units)}"
            )
        r1, _ = self.signature
        if r1 > 0 and self.torsion_order != 2:
            raise InputError("a field with a real embedding has torsion order 2")
        self.torsion_generator  # raises if missing

    # --- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "min_poly": list(self.min_poly),
            "maximal_basis": [[str(x) for x in row] for row in self.maximal_basis],
            "class_number": self.class_number,
            "class_group": list(self.class_group),
            "fundamental_units": [u.to_strings() for u in self.fundamental_units],
            "torsion_order": self.torsion_order,
            "label": self.label,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "FieldSpec":
        if not isinstance(doc, dict):
            raise InputError("field document must be a JSON object")
        keys = set(doc)
        unknown = keys - FIELD_KEYS
        if unknown:
            raise InputError(f"unknown keys in field document: {sorted(unknown)}")
        missing = FIELD_KEYS - keys
        if missing:
            raise InputError(f"missing keys in field document: {sorted(missing)}")
        for key in ("min_poly", "class_group"):
            if not isinstance(doc[key], list) or any(
                not isinstance(c, int) or isinstance(c, bool) for c in doc[key]
            ):
                raise InputError(f"{key} must be an array of integers")
        for key in ("maximal_basis", "fundamental_units"):
            rows = doc[key]
            if not isinstance(rows, list) or any(
                not isinstance(r, list) or any(not isinstance(x, str) for x in r) for r in rows
            ):
                raise InputError(f"{key} must be an array of arrays of rational strings")
        for key in ("class_number", "torsion_order"):
            if not isinstance(doc[key], int) or isinstance(doc[key], bool):
                raise InputError(f"{key} must be an integer")
        if not isinstance(doc["label"], str):
            raise InputError("label must be a string")
        return cls(
            doc["min_poly"],
            doc["maximal_basis"],
            doc["class_number"],
            doc["class_group"],
            doc["fundamental_units"],
            doc["torsion_order"],
            doc["label"],
        )

    def __repr__(self):
        return f"FieldSpec({self.label or self.min_poly})"


def load_field(source) -> FieldSpec:
    """Load a FieldSpec from a path, a JSON string or an already-parsed dict."""
    if isinstance(source, dict):
        return FieldSpec.from_json(source)
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read field file {source}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON ({exc})") from exc
    return FieldSpec.from_json(doc)


def parse_element(field: FieldSpec, text: str) -> FieldElement:
    """Parse ``"6-12a+3a^2"`` (polynomial in ``a``) or ``"6,-12,3"`` (power-basis coordinates)."""
    text = text.strip()
    if not text:
        raise InputError("empty element")
    if field.var not in text:
        parts = [p for p in text.replace(";", ",").split(",")]
        if len(parts) == field.degree:
            return field.element([parse_rational(p) for p in parts])
        if len(parts) == 1:
            return field.rational(parse_rational(parts[0]))
        raise InputError(f"expected {field.degree} coordinates in {text!r}")
    import sympy
    from sympy.parsing.sympy_parser import (
        implicit_multiplication_application,
        parse_expr,
        standard_transformations,
    )

    a = sympy.Symbol(field.var)
    try:
        expr = parse_expr(
            text.replace("^", "**"),
            local_dict={field.var: a},
            transformations=standard_transformations + (implicit_multiplication_application,),
        )
        poly = sympy.Poly(sympy.expand(expr), a)
    except (sympy.SympifyError, sympy.PolynomialError, TypeError, SyntaxError, ValueError) as exc:
        raise InputError(f"cannot parse element {text!r}") from exc
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    if any(not c.is_Rational for c in poly.all_coeffs()):
        raise InputError(f"non-rational coefficient in {text!r}")
    result = field.zero
    t_power = field.one
    for c in coeffs:
        if c:
            result = result + t_power * c
        t_power = t_power * field.gen
    return result


# functional aliases -----------------------------------------------------------

def fe_mul(a: FieldElement, b: FieldElement, spec: FieldSpec | None = None) -> FieldElement:
    if spec is not None and (a.field is not spec or b.field is not spec):
        raise InputError("element does not belong to the given field")
    return a * b


def fe_norm(a: FieldElement, spec: FieldSpec | None = None) -> Fraction:
    if spec is not None and a.field is not spec:
        raise InputError("element does not belong to the given field")
    return a.norm()


def fe_inverse(a: FieldElement, spec: FieldSpec | None = None) -> FieldElement:
    if spec is not None and a.field is not spec:
        raise InputError("element does not belong to the given field")
    return a.inverse()


def fe_trace(a: FieldElement) -> Fraction:
    return a.trace()
