"""Exact computations with orders in number fields."""

from .errors import (
    DomainError,
    GuardExceeded,
    Inconclusive,
    InputError,
    InvariantViolation,
    OrderLabError,
    PreconditionError,
    UnsupportedError,
)
from .field import FieldElement, FieldSpec, load_field, parse_element
from .lattice import ZLattice, hnf, smith
from .ideals import (
    OIdeal,
    OrderRing,
    PrimeIdeal,
    factor_ideal,
    ideal_divisors,
    intermediate_order,
    maximal_order,
    order_monogenic,
    order_z_plus,
    order_z_plus_ideal,
    principal_ideal,
    split_prime,
)
from .units import coset_reps, pell_fundamental, unit_group, unit_index
from .quotients import FiniteQuotient, count_units, quotient_of
from .structure import (
    PropertyReport,
    check_inheritance,
    class_number_of_order,
    is_associated,
    is_ideal_preserving,
    is_locally_associated,
    property_report,
)
from .factorization import (
    AbelianGroup,
    davenport,
    elasticity_maximal,
    hfd_evidence,
    is_irreducible_in,
    length_set,
)
from .pseries import (
    TruncSeries,
    association_obstruction,
    hfd_violation_witness,
    irreducibility_cert_deg1,
    unit_split_trunc,
)
from .corpus import bundled_field, generate_corpus

__version__ = "0.1.0"
