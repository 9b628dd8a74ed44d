from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orderlab import (
    AbelianGroup,
    GuardExceeded,
    InputError,
    PreconditionError,
    davenport,
    elasticity_maximal,
    hfd_evidence,
    is_irreducible_in,
    length_set,
    maximal_order,
    order_z_plus,
)
from orderlab.factorization import divisors_in_order, sample_box

from oracles import davenport_bruteforce, sqrt2_irreducible, sqrt2_prime_count


@pytest.mark.parametrize("n", range(1, 9))
def test_davenport_cyclic(n):
    assert davenport(AbelianGroup((n,))) == n


@pytest.mark.parametrize("orders,expected", [((2, 2), 3), ((3, 3), 5), ((2, 4), 5), ((2, 2, 2), 4), ((2, 6), 7)])
def test_davenport_small(orders, expected):
    assert davenport(AbelianGroup(orders)) == expected
    if len(orders) == 2 and orders[0] * orders[1] <= 9:
        assert davenport_bruteforce(orders) == expected


def test_davenport_guard():
    with pytest.raises(GuardExceeded):
        davenport(AbelianGroup((3, 3, 9)))


def test_abelian_group_normalisation():
    assert AbelianGroup.from_orders([2, 3]).cyclic_orders == (6,)
    assert AbelianGroup.from_orders([4, 2, 1]).cyclic_orders == (2, 4)
    with pytest.raises(InputError):
        AbelianGroup((4, 2))


def test_elasticity_of_maximal():
    assert elasticity_maximal([]) == 1
    assert elasticity_maximal([2]) == 1
    assert elasticity_maximal([3]) == Fraction(3, 2)
    assert elasticity_maximal([2, 2]) == Fraction(3, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(-15, 15), st.integers(-15, 15))
def test_sqrt2_irreducibles(x, y):
    from orderlab import bundled_field

    K = bundled_field("Q-sqrt2")
    a = K.element([x, y])
    if a.is_zero() or abs(a.norm()) == 1:
        return
    O = maximal_order(K)
    assert is_irreducible_in(a, O).irreducible == sqrt2_irreducible(x, y)
    assert length_set(a, O).lengths == (sqrt2_prime_count(x, y),)


def test_irreducible_in_order_not_in_maximal(sqrt2):
    # 5 is irreducible in O (inert) but 25 = 5*5 splits in every order containing 5
    R = order_z_plus(sqrt2, 5)
    assert is_irreducible_in(sqrt2.rational(5), R).irreducible
    ls = length_set(sqrt2.rational(25), R)
    assert 2 in ls.lengths


def test_cubic_class_group_lengths(cubic):
    O = maximal_order(cubic)
    three = cubic.rational(3)
    # 3O = Q * P with both primes non-principal: 3 is irreducible in O
    assert is_irreducible_in(three, O).irreducible
    assert length_set(three * three, O).lengths == (2,)


def test_divisor_pairs_multiply_back(cubic_setup):
    K, R = cubic_setup["K"], cubic_setup["R"]
    alpha = K.parse("6-12a+3a^2")
    pairs = divisors_in_order(alpha, R)
    assert pairs
    for d, c in pairs:
        assert d * c == alpha and R.contains(d) and R.contains(c)


def test_errors(sqrt2):
    O = maximal_order(sqrt2)
    with pytest.raises(PreconditionError):
        is_irreducible_in(sqrt2.one, O)
    with pytest.raises(InputError):
        length_set(sqrt2.zero, O)
    with pytest.raises(PreconditionError):
        is_irreducible_in(sqrt2.gen, order_z_plus(sqrt2, 3))


def test_sample_box_dedups_associates(sqrt2):
    R = order_z_plus(sqrt2, 3)
    xs = list(sample_box(R, 2, 200))
    assert xs and all(1 < abs(x.norm()) <= 200 for x in xs)
    for i, x in enumerate(xs):
        for y in xs[:i]:
            q = x / y
            assert not (R.contains(q) and R.contains(q.inverse()))


def test_hfd_evidence_cubic(cubic_setup):
    ev = hfd_evidence(cubic_setup["R"], 600)
    assert ev.consistent and ev.checked > 0


def test_hfd_evidence_rejects_non_associated(sqrt2):
    ev = hfd_evidence(order_z_plus(sqrt2, 5), 100)
    assert not ev.consistent
