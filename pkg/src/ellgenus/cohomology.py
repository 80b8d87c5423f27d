"""Truncated polynomial algebras modeling even-degree rational cohomology.

An algebra is a finite list of generators with even degrees >= 2 and a
truncation degree D: monomials of total degree > D are identically zero.
Elements (:class:`NilPoly`) are sparse monomial -> coefficient maps with
coefficients either exact rationals or complex numbers.

Generators commute (all degrees are even); odd-degree classes are out of
scope.  Two degree conventions matter downstream:

* a stored generator x represents a Chern root whose actual cohomology
  class is 2*pi*i*x; every formula in this package is arranged so that a
  stored monomial of degree 2p implicitly carries the factor (2*pi*i)**p.
  This keeps all series arithmetic free of transcendental constants.
* ``psi_scale`` is the degree-scaling ring homomorphism multiplying each
  degree-2p component by lambda**p.

Fiber integration is declared data (:class:`PushForward`), not computed
from geometry: a table sending fiber-variable monomials to base classes,
extended base-linearly.
"""

from fractions import Fraction

from .errors import ModelError, NonUnitError, RingMismatchError
from .rings import EXACT, NUMERIC, lift_scalar


class NilVar:
    """A named even-degree generator."""

    __slots__ = ("name", "degree")

    def __init__(self, name, degree):
        degree = int(degree)
        if degree < 2 or degree % 2:
            raise ModelError("generator degree must be even and >= 2, got %d"
                             % degree)
        self.name = str(name)
        self.degree = degree

    def __repr__(self):
        return "NilVar(%r, %d)" % (self.name, self.degree)

    def __eq__(self, other):
        return (isinstance(other, NilVar)
                and (self.name, self.degree) == (other.name, other.degree))

    def __hash__(self):
        return hash((self.name, self.degree))


class NilAlgebra:
    """Polynomial algebra on even generators, truncated above degree D."""

    __slots__ = ("vars", "D", "ring", "_degrees")

    def __init__(self, variables, D, ring=EXACT):
        self.vars = tuple(NilVar(*v) if isinstance(v, tuple) else v
                          for v in variables)
        names = [v.name for v in self.vars]
        if len(set(names)) != len(names):
            raise ModelError("duplicate generator names: %r" % names)
        D = int(D)
        if D < 0 or D % 2:
            raise ModelError("truncation degree must be even and >= 0")
        self.D = D
        if ring not in (EXACT, NUMERIC):
            raise ModelError("unknown scalar ring %r" % ring)
        self.ring = ring
        self._degrees = tuple(v.degree for v in self.vars)

    @property
    def nvars(self):
        return len(self.vars)

    def names(self):
        return tuple(v.name for v in self.vars)

    def __eq__(self, other):
        return (isinstance(other, NilAlgebra)
                and self.vars == other.vars
                and self.D == other.D
                and self.ring == other.ring)

    def __hash__(self):
        return hash((self.vars, self.D, self.ring))

    def __repr__(self):
        gens = ", ".join("%s:%d" % (v.name, v.degree) for v in self.vars)
        return "NilAlgebra([%s], D=%d, %s)" % (gens, self.D, self.ring)

    def mono_degree(self, mono):
        return sum(e * d for e, d in zip(mono, self._degrees))

    def scalar(self, c):
        return lift_scalar(c, self.ring)

    def zero(self):
        return NilPoly(self, {})

    def one(self):
        return NilPoly(self, {(0,) * self.nvars: self.scalar(1)})

    def const(self, c):
        c = self.scalar(c)
        return NilPoly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name):
        for i, v in enumerate(self.vars):
            if v.name == name:
                if v.degree > self.D:
                    return self.zero()
                mono = tuple(1 if j == i else 0 for j in range(self.nvars))
                return NilPoly(self, {mono: self.scalar(1)})
        raise ModelError("unknown generator %r" % name)

    def numeric(self):
        """The same algebra over complex scalars."""
        if self.ring == NUMERIC:
            return self
        return NilAlgebra(self.vars, self.D, NUMERIC)

    def monomials_upto(self):
        """All monomials of degree <= D, as exponent tuples."""
        out = [()]
        for d in self._degrees:
            out = [m + (e,) for m in out
                   for e in range(self.D // d + 1)]
        return [m for m in out if self.mono_degree(m) <= self.D]


class NilPoly:
    """Element of a :class:`NilAlgebra`; immutable by convention."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms, prune=True):
        self.alg = alg
        if prune:
            terms = {m: c for m, c in terms.items()
                     if c and alg.mono_degree(m) <= alg.D}
        self.terms = terms

    def _check(self, other):
        if self.alg != other.alg:
            raise RingMismatchError("mixed algebras: %r vs %r"
                                    % (self.alg, other.alg))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, NilPoly):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg, frozenset(self.terms.items())))

    def __neg__(self):
        return NilPoly(self.alg, {m: -c for m, c in self.terms.items()},
                       prune=False)

    def __add__(self, other):
        if not isinstance(other, NilPoly):
            if other == 0:
                return self
            other = self.alg.const(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return NilPoly(self.alg, out, prune=False)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, NilPoly):
            other = self.alg.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, NilPoly):
            return self.scale(other)
        self._check(other)
        alg = self.alg
        D = alg.D
        out = {}
        for m1, c1 in self.terms.items():
            d1 = alg.mono_degree(m1)
            for m2, c2 in other.terms.items():
                if d1 + alg.mono_degree(m2) > D:
                    continue
                p = c1 * c2
                if not p:
                    continue
                k = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(k, 0) + p
                if s:
                    out[k] = s
                else:
                    del out[k]
        return NilPoly(alg, out, prune=False)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = self.alg.scalar(c) if isinstance(c, (int, Fraction)) else c
        return NilPoly(self.alg, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = self.alg.one()
        base = self
        while k:
            if k % 2:
                out = out * base
            base = base * base
            k //= 2
        return out

    # -- grading ------------------------------------------------------

    def constant_term(self):
        return self.terms.get((0,) * self.alg.nvars, 0)

    def nil_part(self):
        zero = (0,) * self.alg.nvars
        return NilPoly(self.alg,
                       {m: c for m, c in self.terms.items() if m != zero},
                       prune=False)

    def grade_part(self, p):
        """Homogeneous component of degree p (p even)."""
        if p % 2:
            raise ModelError("odd cohomological degree %d" % p)
        return NilPoly(self.alg,
                       {m: c for m, c in self.terms.items()
                        if self.alg.mono_degree(m) == p},
                       prune=False)

    def max_degree(self):
        return max((self.alg.mono_degree(m) for m in self.terms), default=0)

    def psi_scale(self, lam):
        """Multiply each degree-2p component by lam**p."""
        out = {}
        for m, c in self.terms.items():
            p = self.alg.mono_degree(m) // 2
            out[m] = c * (lam ** p) if p else c
        return NilPoly(self.alg, out)

    # -- analytic-style operations (finite by nilpotency) ---------------

    def exp(self):
        """exp(x) = sum x^j / j! for x with zero constant term."""
        if self.constant_term():
            raise NonUnitError("exp needs a zero constant term; "
                               "split off the scalar part first")
        out = self.alg.one()
        term = self.alg.one()
        jmax = self.alg.D // 2
        for j in range(1, jmax + 1):
            term = term * self
            if not term:
                break
            out = out + term.scale(Fraction(1, _factorial(j)))
        return out

    def inverse(self):
        """Inverse of c0 + nil via the finite geometric series."""
        c0 = self.constant_term()
        if not c0:
            raise NonUnitError("constant term is not a unit")
        from .rings import inv
        c0i = inv(c0)
        nil = self.nil_part()
        out = self.alg.const(c0i)
        acc = self.alg.const(c0i)
        for _ in range(self.alg.D // 2):
            acc = (acc * nil).scale(-c0i)
            if not acc:
                break
            out = out + acc
        return out

    def map_scalars(self, f):
        return NilPoly(self.alg, {m: f(c) for m, c in self.terms.items()})

    def to_numeric(self):
        alg = self.alg.numeric()
        return NilPoly(alg, {m: complex(c) for m, c in self.terms.items()},
                       prune=False)

    def __repr__(self):
        return "NilPoly(%s)" % self.render()

    def render(self):
        names = self.alg.names()
        parts = []
        for m in sorted(self.terms, key=lambda m: (self.alg.mono_degree(m), m)):
            factors = []
            for n, e in zip(names, m):
                if e == 1:
                    factors.append(n)
                elif e > 1:
                    factors.append("%s^%d" % (n, e))
            mono = "*".join(factors) if factors else "1"
            parts.append("%s*%s" % (self.terms[m], mono))
        return " + ".join(parts) if parts else "0"


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def sinhc_half(x):
    """(exp(x/2) - exp(-x/2)) / x as a polynomial: sum x^(2j)/(4^j (2j+1)!).

    This is the reduced A-hat denominator attached to a tangent Chern
    root; it is a unit (constant term 1), unlike the difference itself.
    """
    alg = x.alg
    out = alg.one()
    x2 = x * x
    acc = alg.one()
    for j in range(1, alg.D // 4 + 1):
        acc = acc * x2
        if not acc:
            break
        out = out + acc.scale(Fraction(1, 4 ** j * _factorial(2 * j + 1)))
    return out


class PushForward:
    """Integration along the fiber, as a declared monomial table.

    ``comp_alg`` is the component algebra (base generators first, then
    fiber generators); ``table`` maps fiber-variable exponent tuples to
    base classes.  Fiber monomials of degree below ``fiber_dim`` push to
    zero; at or above it they must appear in the table.
    """

    __slots__ = ("comp_alg", "base_alg", "n_base", "table", "fiber_dim")

    def __init__(self, comp_alg, base_alg, table, fiber_dim):
        self.comp_alg = comp_alg
        self.base_alg = base_alg
        self.n_base = base_alg.nvars
        if comp_alg.names()[:self.n_base] != base_alg.names():
            raise ModelError("component algebra must extend the base "
                             "algebra (base generators first)")
        self.table = dict(table)
        self.fiber_dim = int(fiber_dim)

    @classmethod
    def identity(cls, base_alg):
        """For components mapped diffeomorphically to the base."""
        return cls(base_alg, base_alg, {(): base_alg.one()}, 0)

    def fiber_degree(self, fmono):
        degs = [v.degree for v in self.comp_alg.vars[self.n_base:]]
        return sum(e * d for e, d in zip(fmono, degs))

    def integrate(self, c):
        """Linear extension of the table; base factors pass through."""
        if c.alg != self.comp_alg:
            raise RingMismatchError("element not in the component algebra")
        out = self.base_alg.zero()
        for m, coeff in c.terms.items():
            bmono, fmono = m[:self.n_base], m[self.n_base:]
            entry = self.table.get(fmono)
            if entry is None:
                if self.fiber_degree(fmono) >= self.fiber_dim:
                    raise ModelError(
                        "pushforward table is missing fiber monomial %r"
                        % (fmono,))
                continue
            base_mono = NilPoly(self.base_alg,
                                {bmono: self.base_alg.scalar(1)})
            out = out + (entry * base_mono).scale(coeff)
        return out

    def numeric(self):
        if self.base_alg.ring == NUMERIC:
            return self
        return PushForward(self.comp_alg.numeric(), self.base_alg.numeric(),
                           {m: v.to_numeric() for m, v in self.table.items()},
                           self.fiber_dim)
