"""Sparse formal q-series with rational exponents.

A :class:`QSeries` stores coefficients on a uniform exponent grid: the
coefficient of ``q**(n*step)`` lives at integer key ``n``.  ``step`` is a
positive rational whose denominator divides 24, which accommodates every
exponent this package produces (``q**(1/8)`` prefactors, half-integer
gradings, rational anomaly shifts).  Exponents may be negative, so these
are really truncated Laurent series in ``q**step``.

``trunc`` is the truncation index: coefficients at keys ``n >= trunc``
are *unknown*, and asking for one raises :class:`TruncationError` rather
than silently returning zero.  ``trunc=None`` means the series is known
exactly at every order (e.g. a polynomial).  All arithmetic propagates
truncation pessimistically.

Coefficients live in a pluggable commutative ring: exact rationals,
complex numbers, Laurent polynomials in the circle variable, truncated
polynomial-algebra elements, or fractions of those.  Any type with
``+ - * **``, ``==`` and truth-testing works.
"""

import math
from fractions import Fraction

from .errors import NonUnitError, SeriesError, TruncationError
from .rings import inv

MAX_STEP_DEN = 24


def _check_step(step):
    step = Fraction(step)
    if step <= 0:
        raise SeriesError("step must be positive, got %s" % step)
    if MAX_STEP_DEN % step.denominator != 0:
        raise SeriesError("step denominator must divide %d, got %s"
                          % (MAX_STEP_DEN, step))
    return step


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_trunc(a, b):
    if a is None or b is None:
        return None
    return a + b


class QSeries:
    """Sparse q-series; immutable by convention."""

    __slots__ = ("step", "coeffs", "trunc")

    def __init__(self, step, coeffs, trunc=None, prune=True):
        self.step = _check_step(step)
        if prune:
            coeffs = {n: c for n, c in coeffs.items() if c}
        self.coeffs = coeffs
        if trunc is not None:
            trunc = int(trunc)
            if any(n >= trunc for n in coeffs):
                raise SeriesError("stored coefficient at/beyond trunc")
        self.trunc = trunc

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, c, step=1, trunc=None):
        return cls(step, {0: c} if c else {}, trunc)

    @classmethod
    def monomial(cls, c, exponent, trunc=None):
        e = Fraction(exponent)
        step = Fraction(1, e.denominator) if e else Fraction(1)
        return cls(step, {int(e / step): c} if c else {}, trunc)

    # -- basic queries ------------------------------------------------

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def exponent(self, n):
        return n * self.step

    def lowest_key(self):
        """Lowest key with a stored coefficient; trunc if none stored."""
        if self.coeffs:
            return min(self.coeffs)
        return self.trunc

    def lowest_exponent(self):
        k = self.lowest_key()
        return None if k is None else k * self.step

    def coefficient(self, exponent):
        """Coefficient of q**exponent (0 below trunc, error at/beyond)."""
        e = Fraction(exponent)
        n = e / self.step
        if self.trunc is not None:
            if n.denominator == 1 and n >= self.trunc:
                raise TruncationError(
                    "coefficient of q^%s is beyond trunc q^%s"
                    % (e, self.trunc * self.step))
        if n.denominator != 1:
            return 0
        return self.coeffs.get(int(n), 0)

    def known_items(self):
        """Sorted (exponent: Fraction, coeff) pairs of stored terms."""
        return [(n * self.step, c) for n, c in sorted(self.coeffs.items())]

    def trunc_exponent(self):
        return None if self.trunc is None else self.trunc * self.step

    # -- grid handling ------------------------------------------------

    def refine(self, new_step):
        """Re-express on a finer grid; a series isomorphism."""
        new_step = _check_step(new_step)
        ratio = self.step / new_step
        if ratio.denominator != 1:
            raise SeriesError("cannot refine step %s to %s"
                              % (self.step, new_step))
        r = int(ratio)
        if r == 1:
            return self
        trunc = None if self.trunc is None else self.trunc * r
        return QSeries(new_step, {n * r: c for n, c in self.coeffs.items()},
                       trunc, prune=False)

    @staticmethod
    def common_step(a, b):
        num = math.gcd(a.step.numerator * b.step.denominator,
                       b.step.numerator * a.step.denominator)
        return Fraction(num, a.step.denominator * b.step.denominator)

    def unified(self, other):
        s = QSeries.common_step(self, other)
        return self.refine(s), other.refine(s)

    # -- ring operations ----------------------------------------------

    def __neg__(self):
        return QSeries(self.step, {n: -c for n, c in self.coeffs.items()},
                       self.trunc, prune=False)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self.unified(other)
        out = dict(a.coeffs)
        for n, c in b.coeffs.items():
            s = out.get(n, 0) + c
            if s:
                out[n] = s
            else:
                out.pop(n, None)
        trunc = _min_trunc(a.trunc, b.trunc)
        if trunc is not None:
            out = {n: c for n, c in out.items() if n < trunc}
        return QSeries(a.step, out, trunc, prune=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            # scalar (or coefficient-ring element) multiplication
            return self.scale(other)
        a, b = self.unified(other)
        la, lb = a.lowest_key(), b.lowest_key()
        if la is None and a.trunc is None:
            return QSeries(a.step, {}, None)
        if lb is None and b.trunc is None:
            return QSeries(a.step, {}, None)
        trunc = _min_trunc(_add_trunc(a.trunc, lb), _add_trunc(b.trunc, la))
        out = {}
        for n, c in a.coeffs.items():
            for m, d in b.coeffs.items():
                k = n + m
                if trunc is not None and k >= trunc:
                    continue
                p = c * d
                if not p:
                    continue
                s = out.get(k, 0) + p
                if s:
                    out[k] = s
                else:
                    del out[k]
        return QSeries(a.step, out, trunc, prune=False)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        return QSeries(self.step, {n: c * v for n, v in self.coeffs.items()},
                       self.trunc)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        out = None
        base = self
        while True:
            if k % 2:
                out = base if out is None else out * base
            k //= 2
            if k == 0:
                break
            base = base * base
        if out is None:
            raise SeriesError("q-series ** 0 needs a coefficient one; "
                              "use an explicit constant series")
        return out

    def shift(self, exponent):
        """Multiply by q**exponent (rational, denominator dividing 24)."""
        e = Fraction(exponent)
        if e == 0:
            return self
        step = Fraction(math.gcd(self.step.numerator * e.denominator,
                                 e.numerator * self.step.denominator),
                        self.step.denominator * e.denominator)
        a = self.refine(step)
        d = int(e / step)
        trunc = None if a.trunc is None else a.trunc + d
        return QSeries(step, {n + d: c for n, c in a.coeffs.items()},
                       trunc, prune=False)

    def invert(self, trunc=None):
        """Multiplicative inverse as a q-Laurent series.

        The lowest-order coefficient must be a unit.  ``trunc`` (in key
        units of this series' step) bounds the work when the series is
        exact; otherwise the natural propagated truncation is used.
        """
        lo = self.lowest_key()
        if lo is None or not self.coeffs:
            raise NonUnitError("cannot invert zero series")
        lead_inv = inv(self.coeffs[lo])
        if self.trunc is None:
            if trunc is None:
                raise SeriesError("inverting an exact series needs an "
                                  "explicit trunc")
            out_trunc = trunc
        else:
            out_trunc = self.trunc - 2 * lo
            if trunc is not None:
                out_trunc = min(out_trunc, trunc)
        # self = q^lo * sum a_m q^m with a_0 a unit; b_n solves the
        # Cauchy recurrence a_0 b_n = -(a_1 b_{n-1} + ... + a_n b_0)
        a = {n - lo: c for n, c in self.coeffs.items()}
        b = {0: lead_inv}
        for n in range(1, out_trunc + lo):
            acc = 0
            for m, am in a.items():
                if 0 < m <= n:
                    bk = b.get(n - m)
                    if bk is not None:
                        acc = acc + am * bk
            if acc:
                b[n] = -(acc * lead_inv)
        out = {n - lo: c for n, c in b.items() if n - lo < out_trunc and c}
        return QSeries(self.step, out, out_trunc, prune=False)

    # -- misc ---------------------------------------------------------

    def map_coeffs(self, f):
        return QSeries(self.step, {n: f(c) for n, c in self.coeffs.items()},
                       self.trunc)

    def truncate(self, trunc):
        """Forget coefficients at/beyond key ``trunc`` (tighten only)."""
        t = _min_trunc(self.trunc, trunc)
        return QSeries(self.step,
                       {n: c for n, c in self.coeffs.items()
                        if t is None or n < t},
                       t, prune=False)

    def truncate_exponent(self, exponent):
        e = Fraction(exponent) / self.step
        return self.truncate(math.ceil(e))

    def eq_upto(self, other, exponent):
        """Exact coefficient equality for all exponents < ``exponent``."""
        a, b = self.unified(other)
        bound = Fraction(exponent) / a.step
        for t in (a.trunc, b.trunc):
            if t is not None and t < bound:
                raise TruncationError("series not known up to q^%s"
                                      % exponent)
        keys = set(a.coeffs) | set(b.coeffs)
        return all(a.coeffs.get(n, 0) == b.coeffs.get(n, 0)
                   for n in keys if n < bound)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self.unified(other)
        return (a.trunc == b.trunc and a.coeffs == b.coeffs)

    def __repr__(self):
        return "QSeries(%s)" % self.render()

    def render(self, coeff_str=str):
        """Canonical text form ``c*q^(a) + ... + O(q^(T))``.

        Exponents are in lowest terms; composite coefficients are
        parenthesized.
        """
        parts = []
        for n in sorted(self.coeffs):
            e = n * self.step
            c = coeff_str(self.coeffs[n])
            if any(ch in c for ch in "+- ") and not (c.startswith("(")
                                                     and c.endswith(")")):
                c = "(%s)" % c
            parts.append("%s*q^(%s)" % (c, e))
        if not parts:
            parts.append("0")
        if self.trunc is not None:
            parts.append("O(q^(%s))" % (self.trunc * self.step))
        return " + ".join(parts)


def binomial_factor(qexp, coeff, power, trunc_exp, one):
    """(1 + coeff*q^qexp)**power, truncated below exponent trunc_exp.

    ``one`` is the multiplicative unit of the coefficient ring; ``power``
    may be negative (binomial series).  ``qexp`` must be positive.
    """
    qexp = Fraction(qexp)
    trunc_exp = Fraction(trunc_exp)
    if qexp <= 0:
        raise SeriesError("euler factor needs positive exponent, got %s"
                          % qexp)
    step = Fraction(1, qexp.denominator)
    d = int(qexp / step)
    jmax = int(trunc_exp / qexp) + 1
    coeffs = {0: one}
    cpow = one
    binom = 1
    for j in range(1, jmax + 1):
        cpow = cpow * coeff
        if power >= 0:
            if j > power:
                break
            binom = binom * (power - j + 1) // j
        else:
            binom = binom * (power - j + 1) // j  # signed integer binomial
        term = binom * cpow
        if term:
            coeffs[j * d] = term
    trunc = math.ceil(trunc_exp / step)
    return QSeries(step, {n: c for n, c in coeffs.items() if n < trunc},
                   trunc)


def product_of_factors(factors, trunc_exp, one):
    """Product of binomial factors (q_exp, coeff, power), truncated.

    Factors whose exponent is at or beyond ``trunc_exp`` are dropped (they
    cannot affect reported coefficients).
    """
    out = QSeries(1, {0: one}, None)
    trunc_exp = Fraction(trunc_exp)
    for qexp, coeff, power in factors:
        if Fraction(qexp) >= trunc_exp:
            continue
        out = out * binomial_factor(qexp, coeff, power, trunc_exp, one)
    return out.truncate_exponent(trunc_exp)
