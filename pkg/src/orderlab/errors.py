"""Exception hierarchy shared by every orderlab module."""


class OrderLabError(Exception):
    """Base class for all errors raised by orderlab."""


class InputError(OrderLabError, ValueError):
    """Malformed or inconsistent input (bad JSON, wrong dimension, not an order...)."""


class DomainError(OrderLabError, ArithmeticError):
    """Operation undefined for the given value, e.g. inverting zero."""


class PreconditionError(OrderLabError, ValueError):
    """A documented precondition of the operation does not hold."""


class UnsupportedError(OrderLabError):
    """Input lies outside what this version can handle (index-divisor primes, unit rank >= 2...)."""


class GuardExceeded(OrderLabError):
    """An enumeration or search ceiling was hit before the computation finished."""


class Inconclusive(OrderLabError):
    """A bounded search ended without a decision (e.g. principality could not be settled)."""


class InvariantViolation(OrderLabError, AssertionError):
    """A property that theory guarantees failed to hold; always a bug or corrupt data."""
