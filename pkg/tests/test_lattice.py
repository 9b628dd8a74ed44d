import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from orderlab import InputError, PreconditionError, ZLattice, hnf, order_z_plus, smith, split_prime
from orderlab.lattice import det_lower, lat_colon, lat_from_generators, lat_index, lat_intersect, lat_subset, lat_sum

from oracles import lattice_volume

ints = st.integers(-12, 12)


def full_rank_rows(n):
    return st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n + 2).filter(
        lambda rows: sympy.Matrix(rows).rank() == n
    )


def test_sqrt2_generators_hnf(sqrt2):
    L = lat_from_generators([sqrt2.rational(2), sqrt2.element([0, 2]), sqrt2.element([1, 1])])
    assert L.den == 1
    assert L.hnf == ((2, 0), (1, 1))
    assert L.volume == 2
    assert L.dump().splitlines()[0] == "den=1"


def test_membership_and_express(sqrt2):
    L = lat_from_generators([sqrt2.rational(2), sqrt2.element([1, 1])])
    assert L.contains(sqrt2.element([3, 1]))
    assert not L.contains(sqrt2.element([1, 0]))
    assert not L.contains(sqrt2.element([Fraction(1, 2), 0]))
    coeffs = L.express(sqrt2.element([5, 3]))
    assert sum(c * b for c, b in zip(coeffs, L.basis_elements(sqrt2))) == sqrt2.element([5, 3])
    with pytest.raises(PreconditionError):
        L.express(sqrt2.one)


def test_rational_lattice(cubic):
    L = ZLattice.from_vectors([[Fraction(1, 2), 0, 0], [0, 1, 0], [0, 0, Fraction(1, 3)]])
    assert L.den == 6 and L.volume == Fraction(1, 6)
    assert L.contains(cubic.element([Fraction(1, 2), 1, Fraction(2, 3)]))


def test_rank_deficient_rejected():
    with pytest.raises(InputError):
        ZLattice.from_int_rows([[1, 2], [2, 4]])


def test_intersection_of_intermediate_orders(sqrt2):
    R = order_z_plus(sqrt2, 10)
    (P2,) = split_prime(2, sqrt2)
    (P5,) = split_prime(5, sqrt2)
    left = lat_intersect(R.lattice + P2.lattice, R.lattice + P5.lattice)
    right = R.lattice + lat_intersect(P2.lattice, P5.lattice)
    assert left == right


def test_index_and_subset(sqrt2):
    O = sqrt2.maximal_order
    R = order_z_plus(sqrt2, 6).lattice
    assert lat_subset(R, O) and not lat_subset(O, R)
    assert lat_index(O, R) == 6
    with pytest.raises(PreconditionError):
        lat_index(R, O)


def test_colon_recovers_conductor(sqrt2):
    R = order_z_plus(sqrt2, 6).lattice
    O = sqrt2.maximal_order
    I = lat_colon(R, O, sqrt2)
    assert I == ZLattice.from_int_rows([[6, 0], [0, 6]])


def test_bezout_split(sqrt2):
    (P2,) = split_prime(2, sqrt2)
    (P5,) = split_prime(5, sqrt2)
    e1, e2 = P2.lattice.bezout_split(P5.lattice, sqrt2.one, sqrt2)
    assert P2.lattice.contains(e1) and P5.lattice.contains(e2) and e1 + e2 == sqrt2.one
    with pytest.raises(PreconditionError):
        P2.lattice.bezout_split(P2.lattice, sqrt2.one, sqrt2)


@settings(max_examples=60, deadline=None)
@given(full_rank_rows(3), st.permutations(range(3)))
def test_hnf_canonical(rows, perm):
    H = hnf(rows, 3)
    assert abs(det_lower(H)) == lattice_volume(rows)
    # unimodular changes of generators leave the form untouched
    mixed = [list(rows[i]) for i in range(len(rows))]
    mixed[0] = [a + 3 * b for a, b in zip(mixed[0], mixed[-1])]
    mixed = [mixed[i] for i in perm] + mixed[3:]
    assert hnf(mixed, 3) == H
    for i, r in enumerate(H):
        assert r[i] > 0 and all(v == 0 for v in r[i + 1:])
        for below in H[i + 1:]:
            assert 0 <= below[i] < r[i]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(ints, min_size=3, max_size=3), min_size=3, max_size=3))
def test_smith_transforms(m):
    assume(sympy.Matrix(m).det() != 0)
    diag, U, V, Vinv = smith(m)
    D = sympy.Matrix(U) * sympy.Matrix(m) * sympy.Matrix(V)
    assert D == sympy.diag(*diag)
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    assert sympy.Matrix(V) * sympy.Matrix(Vinv) == sympy.eye(3)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    assert math.prod(diag) == abs(sympy.Matrix(m).det())


@settings(max_examples=50, deadline=None)
@given(full_rank_rows(2), full_rank_rows(2))
def test_sum_and_intersection_laws(a_rows, b_rows):
    A = ZLattice.from_int_rows(a_rows)
    B = ZLattice.from_int_rows(b_rows)
    S, M = lat_sum(A, B), lat_intersect(A, B)
    assert A <= S and B <= S and M <= A and M <= B
    # [A+B : A] = [B : A & B]
    assert lat_index(S, A) == lat_index(B, M)
    for r in A.hnf + B.hnf:
        if A.contains_vector(r) and B.contains_vector(r):
            assert M.contains_vector(r)


@settings(max_examples=50, deadline=None)
@given(full_rank_rows(3), st.lists(ints, min_size=3, max_size=3))
def test_reduce_is_canonical(rows, v):
    L = ZLattice.from_int_rows(rows)
    red, den = L.reduce_vector(v)
    assert den == 1
    diff = [a - b for a, b in zip(v, red)]
    assert L.contains_vector(diff)
    shifted = [a + b for a, b in zip(v, L.hnf[-1])]
    assert L.reduce_vector(shifted) == (red, den)
