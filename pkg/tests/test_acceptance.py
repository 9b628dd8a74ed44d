"""The ten acceptance criteria, each timed against its runtime budget.

Every test records one PASS/FAIL line, printed in the terminal summary (and
to stdout when this file is run directly).
"""

import time
from contextlib import contextmanager

import pytest

from orderlab import (
    AbelianGroup,
    OIdeal,
    TruncSeries,
    association_obstruction,
    bundled_field,
    class_number_of_order,
    davenport,
    hfd_violation_witness,
    irreducibility_cert_deg1,
    is_associated,
    is_irreducible_in,
    length_set,
    maximal_order,
    order_z_plus,
    order_z_plus_ideal,
    principal_ideal,
    property_report,
    split_prime,
    unit_index,
)
from orderlab.factorization import sample_box
from orderlab.ideals import ideal_pow
from orderlab.lattice import lat_contains
from orderlab.pseries import ObstructionCertificate
from orderlab.verify import (
    Context,
    branch_class,
    case_associated_implies,
    case_inheritance,
    case_intermediate_conductor,
    case_intersections,
    case_radical_converse,
)

from conftest import ACCEPTANCE_LINES
from oracles import davenport_bruteforce


@contextmanager
def criterion(number: int, title: str, budget: float):
    t0 = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - t0
        status = "PASS" if elapsed < budget else "FAIL (over time)"
    finally:
        elapsed = time.perf_counter() - t0
        line = f"criterion {number:>2}: {status:<16} {title} [{elapsed:.2f}s / {budget:g}s]"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert elapsed < budget, f"criterion {number} took {elapsed:.2f}s, budget {budget}s"


@pytest.fixture(scope="module")
def cubic_orders():
    K = bundled_field("cubic")
    Q, P = split_prime(3, K)
    return K, Q, P, order_z_plus_ideal(K, ideal_pow(P, 2)), order_z_plus_ideal(K, P)


def test_criterion_01_z5sqrt2():
    with criterion(1, "Z[5 sqrt2]: (24, 4, 3), ideal-preserving, not locally associated", 1.0):
        K = bundled_field("Q-sqrt2")
        rep = property_report(order_z_plus(K, 5))
        c = rep.locally_associated.certificate
        assert (c["units_maximal_mod_I"], c["units_order_mod_I"], c["unit_index"]) == (24, 4, 3)
        assert rep.ideal_preserving.verdict is True
        assert rep.locally_associated.verdict is False
        assert c["unit_index"] * c["units_order_mod_I"] != c["units_maximal_mod_I"]


def test_criterion_02_z2sqrt2():
    with criterion(2, "Z[2 sqrt2]: not ideal-preserving via (sqrt2)^2, locally associated", 1.0):
        K = bundled_field("Q-sqrt2")
        rep = property_report(order_z_plus(K, 2))
        assert rep.ideal_preserving.verdict is False
        P, sq = rep.ideal_preserving.certificate["pair"]
        root = principal_ideal(K.gen)
        assert P == root and sq == ideal_pow(root, 2)
        assert rep.locally_associated.verdict is True
        assert rep.locally_associated.certificate["units_maximal_mod_I"] == 2


def test_criterion_03_cubic_example():
    with criterion(3, "cubic field: splitting of 3, principal P^2, associated, indices 4 and 12, |O/P| = 9", 10.0):
        K = bundled_field("cubic")
        Q, P = split_prime(3, K)
        assert Q == OIdeal.from_generators(K, [K.rational(3), K.parse("1+a")])
        assert P == OIdeal.from_generators(K, [K.rational(3), K.parse("2+2a+a^2")])
        assert Q * P == principal_ideal(K.rational(3))
        assert ideal_pow(P, 2).lattice == principal_ideal(K.parse("2-4a+a^2")).lattice
        R = order_z_plus_ideal(K, ideal_pow(P, 2))
        R1 = order_z_plus_ideal(K, P)
        assert is_associated(R).verdict
        assert unit_index(R1) == 4 and unit_index(R) == 12
        assert P.norm == 9


def test_criterion_04_obstruction(cubic_orders):
    K, _, _, R, _ = cubic_orders
    with criterion(4, "3 + a x: association obstruction certificate at degree 1", 5.0):
        res = association_obstruction(TruncSeries([K.rational(3), K.gen], 1), R)
        assert isinstance(res, ObstructionCertificate)
        assert res.level == 1


def test_criterion_05_degree_one_irreducible(cubic_orders):
    K, _, _, R, _ = cubic_orders
    with criterion(5, "degree-one irreducibility: branches k = -1, 0, 1 all fail mod 27", 30.0):
        f = TruncSeries([K.parse("6-12a+3a^2"), K.parse("1-2a-4a^2")], 1)
        cert = irreducibility_cert_deg1(f, R)
        assert cert.irreducible
        three = K.rational(3)
        ks = []
        for b in cert.branches:
            k = branch_class(b["g0"], R, three)
            ks.append(k if k is not None else branch_class(b["h0"], R, three))
            assert not b["solvable"] and b["certificate"].modulus == 27
            assert not b["lattice"].contains(f.coeffs[1])
        assert sorted(ks) == [-1, 0, 1]


def test_criterion_06_hfd_witness(cubic_orders):
    K, _, P, R, _ = cubic_orders
    with criterion(6, "(3 + a x)^36: m = 3, k = 12, all 37 coefficients in R", 5.0):
        beta = K.parse("2-4a+a^2")
        f = TruncSeries([beta * 3, beta * K.gen], 1)
        w = hfd_violation_witness(f, TruncSeries([beta], 1), K.rational(3), K.gen, P, R)
        assert (w.m, w.k) == (3, 12)
        assert len(w.coefficients) == 37
        assert all(lat_contains(R.lattice, c) for c in w.coefficients)


@pytest.fixture(scope="module")
def corpus_context():
    return Context()


def test_criterion_07_class_numbers(corpus_context):
    with criterion(7, "class number of Z[5 sqrt2] is 2; locally associated corpus orders keep h", 60.0):
        assert class_number_of_order(order_z_plus(bundled_field("Q-sqrt2"), 5)) == 2
        flagged = 0
        for e, rep in corpus_context.reports:
            if rep.locally_associated.verdict:
                flagged += 1
                assert rep.quadruple[3] == e.order.field.class_number, e.name
        assert flagged > 0


def test_criterion_08_davenport():
    with criterion(8, "Davenport constants of small groups agree with brute force", 10.0):
        for n in range(1, 9):
            assert davenport(AbelianGroup((n,))) == n
        for orders, expected in [((2, 2), 3), ((3, 3), 5), ((2, 4), 5)]:
            assert davenport(AbelianGroup(orders)) == expected
            assert davenport_bruteforce(orders) == expected


def test_criterion_09_property_suites(corpus_context):
    with criterion(9, "corpus property suites (implications, radical converse, R + J, inheritance)", 120.0):
        ctx = corpus_context
        assert len(ctx.corpus) >= 20
        assert len({e.field_name for e in ctx.corpus}) == 3
        assert case_associated_implies(ctx)["exceptions"] == []
        assert case_radical_converse(ctx)["exceptions"] == []
        assert case_intermediate_conductor(ctx)["exceptions"] == []
        assert case_intersections(ctx)["exceptions"] == []
        assert case_inheritance(ctx)["exceptions"] == []


def test_criterion_10_factorization_transfer(cubic_orders):
    K, _, P, _, R1 = cubic_orders
    with criterion(10, "R + P in the cubic field: irreducibles and length sets match O up to |N| <= 3000", 300.0):
        O = maximal_order(K)
        rep = property_report(R1)
        assert rep.associated.verdict and rep.conductor_radical
        checked = 0
        for x in sample_box(R1, 3, 3000):
            checked += 1
            if is_irreducible_in(x, R1).irreducible:
                assert is_irreducible_in(x, O).irreducible, str(x)
            a, b = length_set(x, R1), length_set(x, O)
            assert a.complete and b.complete
            assert a.lengths == b.lengths, str(x)
        assert checked >= 100


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
