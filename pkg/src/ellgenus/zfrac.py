"""Fractions of Laurent polynomials in z with factored denominators.

Summing a Lefschetz formula over fixed components produces, per q-order,
rational functions of z whose poles sit at roots of unity: every
denominator is a product of factors s(m) = z^(m/2) - z^(-m/2) coming
from nonzero rotation weights.  :class:`FracZ` keeps the denominator in
factored form {m: power} so that addition, reduction and the final
"is this actually a Laurent polynomial?" test are exact and cheap.

Numerators are :class:`~ellgenus.laurent.LaurentZ` with coefficients in
a fixed :class:`~ellgenus.cohomology.NilAlgebra`; denominators are pure
z (scalar coefficients).
"""

from .cohomology import NilPoly
from .errors import NonUnitError
from .laurent import LaurentZ
from .rings import inv


def sm_poly(alg, m):
    """s(m) = z^(m/2) - z^(-m/2) with coefficients in ``alg``."""
    m = int(m)
    if m <= 0:
        raise NonUnitError("sm factor needs a positive weight")
    one = alg.scalar(1)
    return LaurentZ({m: alg.const(one), -m: alg.const(-1)})


class FracZ:
    """num / prod_m s(m)^e_m with num a LaurentZ over a NilAlgebra."""

    __slots__ = ("alg", "num", "den")

    def __init__(self, alg, num, den=None, prune=True):
        self.alg = alg
        self.num = num
        den = dict(den) if den else {}
        if prune:
            den = {m: e for m, e in den.items() if e}
        if not num:
            den = {}
        self.den = den

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_laurent(cls, alg, lz):
        return cls(alg, lz)

    @classmethod
    def from_nil(cls, alg, p):
        return cls(alg, LaurentZ.const(p) if p else LaurentZ({}, prune=False))

    @classmethod
    def const(cls, alg, c):
        return cls.from_nil(alg, alg.const(c))

    @classmethod
    def one(cls, alg):
        return cls.from_nil(alg, alg.one())

    def den_laurent(self):
        out = LaurentZ.const(self.alg.one())
        for m, e in sorted(self.den.items()):
            out = out * sm_poly(self.alg, m) ** e
        return out

    # -- ring structure ---------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def __neg__(self):
        return FracZ(self.alg, -self.num, self.den, prune=False)

    def __add__(self, other):
        if not isinstance(other, FracZ):
            if other == 0:
                return self
            other = FracZ.const(self.alg, other)
        if self.den == other.den:
            return FracZ(self.alg, self.num + other.num, self.den)
        keys = set(self.den) | set(other.den)
        den = {m: max(self.den.get(m, 0), other.den.get(m, 0)) for m in keys}
        a = self.num
        for m in keys:
            d = den[m] - self.den.get(m, 0)
            if d:
                a = a * sm_poly(self.alg, m) ** d
        b = other.num
        for m in keys:
            d = den[m] - other.den.get(m, 0)
            if d:
                b = b * sm_poly(self.alg, m) ** d
        return FracZ(self.alg, a + b, den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FracZ):
            return self.scale(other)
        den = dict(self.den)
        for m, e in other.den.items():
            den[m] = den.get(m, 0) + e
        return FracZ(self.alg, self.num * other.num, den)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        return FracZ(self.alg, self.num.scale(c), self.den, prune=False)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = FracZ.one(self.alg)
        base = self
        while k:
            if k % 2:
                out = out * base
            base = base * base
            k //= 2
        return out

    def __eq__(self, other):
        if not isinstance(other, FracZ):
            other = FracZ.const(self.alg, other)
        return self.num * other.den_laurent() == other.num * self.den_laurent()

    # -- reduction ----------------------------------------------------

    def reduce(self):
        """Cancel denominator factors dividing the numerator exactly."""
        if not self.num:
            return FracZ(self.alg, self.num, {}, prune=False)
        num = self.num
        den = dict(self.den)
        for m in sorted(den):
            f = sm_poly(self.alg, m)
            while den[m] > 0:
                q = num.divide_exact(f)
                if q is None:
                    break
                num = q
                den[m] -= 1
            if den[m] == 0:
                del den[m]
        return FracZ(self.alg, num, den, prune=False)

    def is_laurent(self):
        return not self.reduce().den

    def as_laurent(self):
        """The numerator as a Laurent polynomial, if the fraction is one."""
        r = self.reduce()
        if r.den:
            raise NonUnitError("fraction does not reduce to a Laurent "
                               "polynomial: residual denominator %r" % r.den)
        return r.num

    # -- inversion ------------------------------------------------------

    def _split_scalar_part(self):
        """Numerator = pure-z part (constant coefficients) + nilpotent rest."""
        n0 = {}
        nil = {}
        for e, c in self.num.coeffs.items():
            c0 = c.constant_term()
            cn = c.nil_part()
            if c0:
                n0[e] = c0
            if cn:
                nil[e] = cn
        return n0, LaurentZ(nil, prune=False)

    def inverse(self):
        """Invert; the pure-z part of num must factor as mono * prod s(m).

        This covers every inversion the fixed-point assembly needs: the
        leading q-coefficient of a theta denominator is s(m) plus
        nilpotent corrections.
        """
        if not self.num:
            raise NonUnitError("division by zero fraction")
        n0, nil = self._split_scalar_part()
        if not n0:
            raise NonUnitError("numerator has nilpotent leading part")
        coeff, shift, factors = _factor_pure_z(n0)
        # 1/n0 as a fraction
        inv0 = FracZ(self.alg,
                     LaurentZ.monomial(self.alg.const(inv(coeff)), -shift),
                     factors, prune=False)
        # 1/(n0 + nil) = sum_j (-1)^j nil^j / n0^(j+1), finite by nilpotency
        out = inv0
        if nil:
            t = FracZ(self.alg, nil) * inv0
            sign = -1
            term = inv0
            for _ in range(self.alg.D // 2):
                term = term * t
                if not term.num:
                    break
                out = out + term.scale(sign)
                sign = -sign
        # restore the original denominator as a numerator factor
        return out * FracZ(self.alg, self.den_laurent())

    def map_nil(self, f):
        return FracZ(self.alg, self.num.map_coeffs(f), self.den, prune=False)

    def prune_small(self, rel=1e-13):
        """Drop numerator entries below rel * (max magnitude, floored at 1).

        Only meaningful over complex scalars, where exact cancellations
        leave rounding noise that would otherwise block reduction.
        """
        mags = [abs(v) for c in self.num.coeffs.values()
                for v in c.terms.values()]
        if not mags:
            return self
        cut = rel * max(max(mags), 1.0)
        from .cohomology import NilPoly
        out = {}
        for e, c in self.num.coeffs.items():
            kept = NilPoly(c.alg, {m: v for m, v in c.terms.items()
                                   if abs(v) >= cut}, prune=False)
            if kept:
                out[e] = kept
        return FracZ(self.alg, LaurentZ(out, prune=False), self.den)

    def eval_w(self, w):
        """Evaluate at z^(1/2) = w; returns a NilPoly over the algebra."""
        n = self.num.eval_w(w)
        d = 1.0
        for m, e in self.den.items():
            d *= (w ** m - w ** (-m)) ** e
        if isinstance(n, NilPoly):
            return n.scale(1.0 / d)
        return n / d

    def __repr__(self):
        if not self.den:
            return "FracZ(%s)" % self.num.render()
        den = "*".join("s(%d)^%d" % (m, e) if e > 1 else "s(%d)" % m
                       for m, e in sorted(self.den.items()))
        return "FracZ((%s) / %s)" % (self.num.render(), den)


def _factor_pure_z(coeffs):
    """Factor a scalar Laurent polynomial as c * w^shift * prod s(m)^e.

    ``coeffs`` maps half-unit exponents to scalars.  Raises
    :class:`NonUnitError` when no such factorization exists.
    """
    lz = LaurentZ(dict(coeffs), prune=False)
    factors = {}
    span = max(lz.coeffs) - min(lz.coeffs)
    m = span
    while m >= 1:
        f = LaurentZ({m: 1, -m: -1}, prune=False)
        q = lz.divide_exact(f)
        if q is not None:
            lz = q
            factors[m] = factors.get(m, 0) + 1
            span = (max(lz.coeffs) - min(lz.coeffs)) if lz.coeffs else 0
            m = min(m, span)
        else:
            m -= 1
    if len(lz.coeffs) != 1:
        raise NonUnitError("pure-z part is not monomial times s-factors: %r"
                           % lz.coeffs)
    (shift, c), = lz.coeffs.items()
    return c, shift, factors
