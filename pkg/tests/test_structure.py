import pytest
from hypothesis import given, settings, strategies as st

from orderlab import (
    InvariantViolation,
    bundled_field,
    check_inheritance,
    class_number_of_order,
    ideal_divisors,
    is_associated,
    is_ideal_preserving,
    is_locally_associated,
    order_z_plus,
    principal_ideal,
    property_report,
)
from orderlab.ideals import ideal_pow
from orderlab.structure import PropertyReport, Verdict, class_number_from

from oracles import eisenstein_unit_index, kronecker_quadratic_class_number, sqrt2_unit_index


def test_z5sqrt2(sqrt2):
    R = order_z_plus(sqrt2, 5)
    rep = property_report(R)
    assert rep.quadruple == (3, 24, 4, 2)
    assert rep.ideal_preserving.verdict and not rep.locally_associated.verdict
    assert not rep.associated.verdict
    assert class_number_of_order(R) == 2


def test_z2sqrt2(sqrt2):
    rep = property_report(order_z_plus(sqrt2, 2))
    assert not rep.ideal_preserving.verdict
    P, sq = rep.ideal_preserving.certificate["pair"]
    assert P == principal_ideal(sqrt2.gen) and sq == ideal_pow(P, 2)
    assert rep.locally_associated.verdict
    assert rep.locally_associated.certificate["units_maximal_mod_I"] == 2


def test_cubic_associated(cubic_setup):
    R = cubic_setup["R"]
    cert = is_associated(R).certificate
    assert is_associated(R).verdict and cert["residues"] == 81
    assert is_associated(cubic_setup["R1"]).verdict
    assert is_ideal_preserving(R).verdict and is_locally_associated(R).verdict


def test_associated_counterexample(sqrt2):
    v = is_associated(order_z_plus(sqrt2, 5))
    assert not v.verdict
    t = v.certificate["counterexample"]
    assert sqrt2.maximal_order.contains(t)


@pytest.mark.parametrize("m", range(2, 16))
def test_class_number_against_classical_formula(sqrt2, m):
    R = order_z_plus(sqrt2, m)
    expected = kronecker_quadratic_class_number(1, 8, m, sqrt2_unit_index(m))
    assert class_number_of_order(R) == expected


@pytest.mark.parametrize("m", range(2, 12))
def test_eisenstein_class_number(eisenstein, m):
    R = order_z_plus(eisenstein, m)
    expected = kronecker_quadratic_class_number(1, -3, m, eisenstein_unit_index(m))
    assert class_number_of_order(R) == expected


def test_class_number_formula_rejects_fractions():
    with pytest.raises(InvariantViolation):
        class_number_from(1, 24, 5, 3)


def test_implication_checker_catches_violations():
    bad = PropertyReport(Verdict(True), Verdict(False), Verdict(True, {}), False)
    with pytest.raises(InvariantViolation):
        bad.check_implications()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["Q-sqrt2", "Q-sqrt-3", "cubic"]), st.integers(2, 9))
def test_theorem_properties(name, m):
    K = bundled_field(name)
    R = order_z_plus(K, m)
    rep = property_report(R)  # raises on a failed implication
    la = rep.locally_associated.verdict
    assert la == (rep.quadruple[3] == K.class_number)
    assert rep.quadruple[3] >= K.class_number
    for J in ideal_divisors(R.conductor):
        pairs = check_inheritance(R, J)
        for before, after in pairs.values():
            assert after or not before
