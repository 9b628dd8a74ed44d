import copy
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orderlab import DomainError, FieldSpec, InputError, bundled_field, load_field, parse_element
from orderlab.field import fe_inverse, fe_mul, fe_norm, fe_trace

from oracles import resultant_norm

small = st.integers(-20, 20)


def elements(field):
    return st.lists(small, min_size=field.degree, max_size=field.degree).map(field.element)


def test_cubic_norms(cubic):
    beta = cubic.parse("2-4a+a^2")
    assert beta.norm() == 81
    assert beta.norm() == resultant_norm(cubic.min_poly, [2, -4, 1])
    assert cubic.gen.norm() == 1
    assert cubic.rational(3).norm() == 27


def test_sqrt2_basics(sqrt2):
    x = sqrt2.element([1, 1])
    assert x * x == sqrt2.element([3, 2])
    assert x.norm() == -1
    assert x.inverse() == sqrt2.element([-1, 1])
    assert fe_trace(x) == 2


def test_parse_forms(cubic):
    assert cubic.parse("6,-12,3") == cubic.parse("6 - 12a + 3a^2") == cubic.parse("6-12*a+3*a**2")
    assert cubic.parse("1/2") == cubic.rational(Fraction(1, 2))
    assert parse_element(cubic, "a") == cubic.gen
    with pytest.raises(InputError):
        cubic.parse("a + ")
    with pytest.raises(InputError):
        cubic.parse("1,2")


def test_zero_has_no_inverse(cubic):
    with pytest.raises(DomainError):
        cubic.zero.inverse()
    with pytest.raises(DomainError):
        fe_inverse(cubic.zero)


def test_invariants(cubic, sqrt2, eisenstein):
    assert cubic.discriminant == -283
    assert sqrt2.discriminant == 8
    assert eisenstein.discriminant == -3
    assert cubic.signature == (1, 1) and cubic.unit_rank == 1
    assert eisenstein.unit_rank == 0
    t = eisenstein.torsion_generator
    assert t**6 == eisenstein.one and t**3 != eisenstein.one and t**2 != eisenstein.one


def test_json_round_trip(cubic):
    again = FieldSpec.from_json(cubic.to_json())
    assert again.to_json() == cubic.to_json()
    assert load_field(cubic.to_json()).discriminant == cubic.discriminant


@pytest.mark.parametrize(
    "patch",
    [
        {"min_poly": [-1, 4, 0, 2]},
        {"min_poly": [-2, 0, 1, 0]},
        {"min_poly": [0, 0, 1]},
        {"class_number": 3},
        {"fundamental_units": [["2", "0", "0"]]},
        {"maximal_basis": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1/3"]]},
        {"torsion_order": 4},
        {"extra": 1},
    ],
)
def test_rejects_bad_documents(cubic, patch):
    doc = copy.deepcopy(cubic.to_json())
    doc.update(patch)
    with pytest.raises(InputError):
        FieldSpec.from_json(doc)


def test_reducible_polynomial_rejected():
    with pytest.raises(InputError):
        FieldSpec([-1, 0, 1], [["1", "0"], ["0", "1"]], 1, [], [], 2)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_ring_axioms_and_norm(data):
    K = bundled_field(data.draw(st.sampled_from(["Q-sqrt2", "Q-sqrt-3", "cubic"])))
    x, y, z = (data.draw(elements(K)) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert fe_norm(fe_mul(x, y)) == x.norm() * y.norm()
    assert x.norm() == resultant_norm(K.min_poly, list(x.coords))
    if not x.is_zero():
        assert x * x.inverse() == K.one
        assert (x / x) == K.one


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_string_round_trip(data):
    K = bundled_field(data.draw(st.sampled_from(["Q-sqrt2", "cubic"])))
    x = data.draw(elements(K))
    assert K.parse(str(x)) == x
    assert K.parse(",".join(x.to_strings())) == x
