import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orderlab import bundled_field, count_units, order_z_plus, quotient_of, split_prime
from orderlab.errors import GuardExceeded
from orderlab.quotients import FiniteQuotient, count_units_bijective, crt_split

from oracles import eisenstein_norm, euler_phi, quadratic_units_mod, sqrt2_norm


def conductor_quotients(K, m):
    R = order_z_plus(K, m)
    I = R.conductor.lattice
    return quotient_of(K.maximal_order, I, K), quotient_of(R.lattice, I, K)


@pytest.mark.parametrize("m", range(2, 13))
def test_sqrt2_unit_counts(sqrt2, m):
    qo, qr = conductor_quotients(sqrt2, m)
    assert qo.size == m * m and qr.size == m
    assert count_units(qo) == quadratic_units_mod(m, sqrt2_norm)
    assert count_units(qr) == euler_phi(m)


@pytest.mark.parametrize("m", range(2, 10))
def test_eisenstein_unit_counts(eisenstein, m):
    qo, _ = conductor_quotients(eisenstein, m)
    assert count_units(qo) == quadratic_units_mod(m, eisenstein_norm)


def test_paper_counts(sqrt2):
    qo, qr = conductor_quotients(sqrt2, 5)
    assert (count_units(qo), count_units(qr)) == (24, 4)
    qo, _ = conductor_quotients(sqrt2, 2)
    assert count_units(qo) == 2


def test_residue_field_of_cubic_prime(cubic_setup):
    K, P = cubic_setup["K"], cubic_setup["P"]
    q = quotient_of(K.maximal_order, P.lattice, K)
    assert q.size == 9 and count_units(q) == 8


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["Q-sqrt2", "Q-sqrt-3", "cubic"]), st.integers(2, 7))
def test_pairwise_count_matches_bijective(name, m):
    K = bundled_field(name)
    qo, qr = conductor_quotients(K, m)
    assert count_units(qo) == count_units_bijective(qo)
    assert count_units(qr) == count_units_bijective(qr)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["Q-sqrt2", "cubic"]), st.integers(2, 6), st.data())
def test_multiplication_is_well_defined(name, m, data):
    K = bundled_field(name)
    qo, _ = conductor_quotients(K, m)
    elems = qo.all_elements()
    i, j = data.draw(st.integers(0, len(elems) - 1)), data.draw(st.integers(0, len(elems) - 1))
    x, y = qo.lift(elems[i].tolist()), qo.lift(elems[j].tolist())
    prod = qo.multiply_by(elems[i : i + 1], y)[0]
    assert tuple(int(v) for v in prod) == qo.coords(x * y)
    # shifting a representative by the modulus leaves its class unchanged
    shift = K.rational(m) * K.gen
    assert qo.coords(x + shift) == qo.coords(x)
    mask = qo.unit_mask()
    if mask[i] and mask[j]:
        assert qo.is_unit(x * y)


def test_crt_split(sqrt2):
    R = order_z_plus(sqrt2, 10)
    (P2,) = split_prime(2, sqrt2)
    (P5,) = split_prime(5, sqrt2)
    q = quotient_of(R.lattice, R.conductor.lattice, sqrt2)
    res = crt_split(q, [P2**2, P5])
    assert res["injective"]
    assert res["image_size"] == q.size
    qo = quotient_of(sqrt2.maximal_order, R.conductor.lattice, sqrt2)
    full = crt_split(qo, [P2**2, P5])
    assert full["surjective"] and full["injective"]
    assert all(a is not None for a in full["alphas"])


def test_enumeration_guard(sqrt2, monkeypatch):
    monkeypatch.setenv("ORDERLAB_GUARD_SIZE", "10")
    qo, _ = conductor_quotients(sqrt2, 5)
    with pytest.raises(GuardExceeded):
        qo.all_elements()
