"""Laurent polynomials in the circle variable z, on the half-integer grid.

Exponents are stored as integer counts of 1/2, i.e. key ``e`` stands for
``z**(e/2)``.  Half-integer powers come from spinor-type factors
``z**(m/2) - z**(-m/2)``; writing ``w = z**(1/2)`` these are ordinary
Laurent polynomials in w.  Coefficients can be scalars or polynomial-
algebra elements.

``sm(m)`` builds the recurring factor ``z**(m/2) - z**(-m/2)``; exact
division by such factors (`LaurentZ.divide_exact`) is what reduces the
genus fractions to honest Laurent polynomials.
"""

from .errors import NonUnitError


class LaurentZ:
    """Sparse Laurent polynomial in w = z^(1/2); key e means z^(e/2)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, prune=True):
        if prune:
            coeffs = {e: c for e, c in coeffs.items() if c}
        self.coeffs = coeffs

    @classmethod
    def const(cls, c):
        return cls({0: c} if c else {}, prune=False)

    @classmethod
    def monomial(cls, c, e):
        """c * z^(e/2); ``e`` in half-units."""
        return cls({int(e): c} if c else {}, prune=False)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, LaurentZ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __neg__(self):
        return LaurentZ({e: -c for e, c in self.coeffs.items()}, prune=False)

    def __add__(self, other):
        if not isinstance(other, LaurentZ):
            if other == 0:
                return self
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return LaurentZ(out, prune=False)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentZ):
            return self.scale(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                p = c1 * c2
                if not p:
                    continue
                k = e1 + e2
                s = out.get(k, 0) + p
                if s:
                    out[k] = s
                else:
                    del out[k]
        return LaurentZ(out, prune=False)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        return LaurentZ({e: c * v for e, v in self.coeffs.items()})

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
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
            raise NonUnitError("LaurentZ ** 0 needs an explicit unit")
        return out

    def map_coeffs(self, f):
        return LaurentZ({e: f(c) for e, c in self.coeffs.items()})

    def inverse(self):
        """Inverse; only monomials with unit coefficient are units."""
        if len(self.coeffs) != 1:
            raise NonUnitError("LaurentZ element is not a monomial")
        (e, c), = self.coeffs.items()
        from .rings import inv
        return LaurentZ({-e: inv(c)}, prune=False)

    # -- structure ----------------------------------------------------

    def support(self):
        return sorted(self.coeffs)

    def degree_span(self):
        """(min, max) half-unit exponents, or None for the zero element."""
        if not self.coeffs:
            return None
        return min(self.coeffs), max(self.coeffs)

    def is_constant(self):
        return not self.coeffs or set(self.coeffs) == {0}

    def constant_coeff(self):
        return self.coeffs.get(0, 0)

    def bar(self):
        """z -> 1/z involution."""
        return LaurentZ({-e: c for e, c in self.coeffs.items()}, prune=False)

    def eval_w(self, w):
        """Evaluate with z^(1/2) = w (numeric or exact scalar)."""
        acc = 0
        for e, c in self.coeffs.items():
            acc = acc + c * (w ** e)
        return acc

    def divide_exact(self, other):
        """Exact division by another LaurentZ with unit leading coeff.

        Returns the quotient, or None when the remainder is nonzero.
        """
        if not other:
            raise NonUnitError("division by zero Laurent polynomial")
        if not self:
            return self
        den = sorted(other.coeffs.items())
        dlead_e, dlead_c = den[-1]
        from .rings import inv
        dlead_inv = inv(dlead_c)
        rem = dict(self.coeffs)
        quo = {}
        qe_min = min(self.coeffs) - min(other.coeffs)
        while rem:
            e = max(rem)
            qe = e - dlead_e
            if qe < qe_min:
                return None
            qc = rem[e] * dlead_inv
            quo[qe] = qc
            for de, dc in den:
                k = qe + de
                s = rem.get(k, 0) - qc * dc
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return LaurentZ(quo)

    def __repr__(self):
        return "LaurentZ(%s)" % self.render()

    def render(self, coeff_str=str):
        from fractions import Fraction
        parts = []
        for e in sorted(self.coeffs):
            ze = Fraction(e, 2)
            if ze == 0:
                parts.append("(%s)" % coeff_str(self.coeffs[e]))
            else:
                parts.append("(%s)*z^(%s)" % (coeff_str(self.coeffs[e]), ze))
        return " + ".join(parts) if parts else "0"


def sm(m, one=1):
    """The factor z^(m/2) - z^(-m/2) for a nonzero integer weight m."""
    if m == 0:
        raise NonUnitError("weight 0 gives the zero factor")
    return LaurentZ({m: one, -m: -one})
