"""Scalar coefficient helpers.

Exact computations run over ``fractions.Fraction``; numeric ones over
``complex``.  Composite coefficient types (Laurent polynomials in the
circle variable, truncated polynomial algebra elements, their fractions)
are built on top of these two scalar rings and all implement ``+``,
``-``, ``*``, integer ``**``, ``==`` and truth-testing (false == zero),
so generic series code never needs to know which ring it is running
over.  ``inv`` below is the one dispatch point for multiplicative
inverses.
"""

from fractions import Fraction

from .errors import NonUnitError

EXACT = "exact"
NUMERIC = "numeric"


def is_scalar(x):
    return isinstance(x, (int, Fraction, float, complex))


def as_fraction(x):
    """Coerce ints/Fractions (and strings like '1/2') to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError("cannot coerce %r to an exact rational" % (x,))


def scalar_ring_of(x):
    if isinstance(x, (int, Fraction)):
        return EXACT
    if isinstance(x, (float, complex)):
        return NUMERIC
    raise TypeError("not a scalar: %r" % (x,))


def lift_scalar(x, ring):
    """Lift an int/Fraction/complex into the requested scalar ring."""
    if ring == EXACT:
        return as_fraction(x)
    return complex(x)


def inv(x):
    """Multiplicative inverse in whatever ring ``x`` lives in."""
    if isinstance(x, (int, Fraction)):
        if x == 0:
            raise NonUnitError("division by zero")
        return Fraction(1, 1) / Fraction(x)
    if isinstance(x, (float, complex)):
        if x == 0:
            raise NonUnitError("division by zero")
        return 1.0 / x
    return x.inverse()


def near_zero(x, tol):
    """Zero test usable for both exact and floating coefficients."""
    if isinstance(x, (int, Fraction)):
        return x == 0
    return abs(x) <= tol
