import pytest
from hypothesis import given, settings, strategies as st

from orderlab import InputError, coset_reps, order_z_plus, pell_fundamental, unit_group, unit_index
from orderlab.units import coset_of

from oracles import eisenstein_unit_index, sqrt2_unit_index


@pytest.mark.parametrize("d,expected", [(2, (1, 1)), (3, (2, 1)), (13, (18, 5)), (61, (29718, 3805))])
def test_pell(d, expected):
    assert pell_fundamental(d) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 60))
def test_pell_minimal(d):
    import sympy

    if sympy.ntheory.factor_.core(d) != d:
        with pytest.raises(InputError):
            pell_fundamental(d)
        return
    x, y = pell_fundamental(d)
    assert x * x - d * y * y in (1, -1)
    for yy in range(1, y):
        for s in (1, -1):
            xx2 = d * yy * yy + s
            assert xx2 < 0 or int(xx2**0.5 + 0.5) ** 2 != xx2


def test_pell_rejects():
    with pytest.raises(InputError):
        pell_fundamental(4)
    with pytest.raises(InputError):
        pell_fundamental(1)


@pytest.mark.parametrize("m", range(2, 16))
def test_sqrt2_unit_index(sqrt2, m):
    R = order_z_plus(sqrt2, m)
    assert unit_index(R) == sqrt2_unit_index(m)
    reps = coset_reps(R)
    assert len(reps.reps) == reps.index == unit_index(R)
    for i, r in enumerate(reps.reps):
        for s in reps.reps[:i]:
            assert not R.contains(r / s)


@pytest.mark.parametrize("m", range(2, 10))
def test_eisenstein_unit_index(eisenstein, m):
    assert unit_index(order_z_plus(eisenstein, m)) == eisenstein_unit_index(m)


def test_cubic_unit_indices(cubic_setup):
    assert unit_index(cubic_setup["R1"]) == 4
    assert unit_index(cubic_setup["R"]) == 12
    K, R = cubic_setup["K"], cubic_setup["R"]
    (eps,) = unit_group(R).fundamentals
    assert R.contains(eps) and abs(eps.norm()) == 1
    assert eps in (K.gen**12, -(K.gen**12))


def test_z5sqrt2_three_cosets(sqrt2):
    reps = coset_reps(order_z_plus(sqrt2, 5))
    assert reps.index == 3 and reps.torsion_index == 1


def test_coset_of(cubic_setup):
    K, R = cubic_setup["K"], cubic_setup["R"]
    reps = coset_reps(R)
    for j in range(12):
        assert reps.exponents[coset_of(-(K.gen**j) * K.gen**24, R)] == (0, j)
    with pytest.raises(InputError):
        coset_of(K.rational(2), R)
