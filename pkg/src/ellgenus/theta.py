"""Jacobi theta functions: formal q-expansions, numeric backends, checks.

Conventions (q = e^(2 pi i tau), fixed throughout):

    theta (v,tau) = c(q) q^(1/8) 2 sin(pi v)  prod (1 - q^n e^(2pi i v))(1 - q^n e^(-2pi i v))
    theta1(v,tau) = c(q) q^(1/8) 2 cos(pi v)  prod (1 + q^n e^(2pi i v))(1 + q^n e^(-2pi i v))
    theta2(v,tau) = c(q)  prod (1 - q^(n-1/2) e^(2pi i v))(1 - q^(n-1/2) e^(-2pi i v))
    theta3(v,tau) = c(q)  prod (1 + q^(n-1/2) e^(2pi i v))(1 + q^(n-1/2) e^(-2pi i v))

with c(q) = prod (1 - q^n).  Note this labeling is *not* the
Whittaker-Watson one: theta here is the odd function (WW theta_1 up to
normalization), theta1 the cosine kind, theta2 the half-integer kind
with minus signs (WW theta_4), theta3 the usual theta_3.

The formal backend works with "reduced" series: writing z = e^(2 pi i t)
and E = exp of a nilpotent Chern-root part (with the convention that a
degree-2p monomial silently carries (2 pi i)^p), one has

    theta  = (-i) * theta_hat,      theta_hat = q^(1/8) (z^(m/2) E^(1/2) - z^(-m/2) E^(-1/2)) prod(...) c(q)
    theta1 =        theta1_hat,     with + signs and no sin/cos constant
    theta'(0,tau) = 2 pi * q^(1/8) c(q)^3

so every genus formula in this package has all factors of i and 2 pi
cancel exactly; the residual scalar is tracked by :class:`Scalar` and is
1 for each assembled genus.
"""

import cmath
import math
from fractions import Fraction

from .errors import ThetaError
from .laurent import LaurentZ
from .rings import EXACT, NUMERIC, as_fraction
from .series import QSeries, product_of_factors

THETA = "theta"
THETA1 = "theta1"
THETA2 = "theta2"
THETA3 = "theta3"
ALL_KINDS = (THETA, THETA1, THETA2, THETA3)

TWO_PI = 2.0 * math.pi

# kind -> (sign in the product factors, has the q^(1/8)-and-prefactor part,
#          half-integer q powers)
_KIND_DATA = {
    THETA: (-1, True, False),
    THETA1: (+1, True, False),
    THETA2: (-1, False, True),
    THETA3: (+1, False, True),
}


class Scalar:
    """rat * i^ipow * (2 pi)^pipow, the transcendental prefactor bucket."""

    __slots__ = ("rat", "ipow", "pipow")

    def __init__(self, rat=1, ipow=0, pipow=0):
        self.rat = as_fraction(rat)
        self.ipow = ipow % 4
        self.pipow = int(pipow)

    def __mul__(self, other):
        return Scalar(self.rat * other.rat, self.ipow + other.ipow,
                      self.pipow + other.pipow)

    def __eq__(self, other):
        return (isinstance(other, Scalar)
                and (self.rat, self.ipow, self.pipow)
                == (other.rat, other.ipow, other.pipow))

    def is_one(self):
        return self.rat == 1 and self.ipow == 0 and self.pipow == 0

    def value(self):
        return complex(self.rat) * (1j ** self.ipow) * (TWO_PI ** self.pipow)

    def __repr__(self):
        return "Scalar(%s * i^%d * (2pi)^%d)" % (self.rat, self.ipow,
                                                 self.pipow)


THETA_TRUE_SCALAR = {
    THETA: Scalar(1, 3, 0),   # -i, from 2 sin(pi v) = -i (z^(1/2)-z^(-1/2))
    THETA1: Scalar(1, 0, 0),
    THETA2: Scalar(1, 0, 0),
    THETA3: Scalar(1, 0, 0),
}


class ThetaArg:
    """Argument x + l*t + beta: nilpotent part, z-weight, rational shift."""

    __slots__ = ("z_weight", "nil", "shift")

    def __init__(self, z_weight=0, nil=None, shift=0):
        self.z_weight = as_fraction(z_weight)
        if (2 * self.z_weight).denominator != 1:
            raise ThetaError("z-weight must be a half-integer, got %s"
                             % self.z_weight)
        self.nil = nil
        self.shift = as_fraction(shift)

    def __repr__(self):
        return "ThetaArg(z_weight=%s, nil=%r, shift=%s)" % (
            self.z_weight, self.nil, self.shift)


class ThetaSeries:
    """A formal theta expansion: true value = scalar * series."""

    __slots__ = ("scalar", "series")

    def __init__(self, scalar, series):
        self.scalar = scalar
        self.series = series

    def __repr__(self):
        return "ThetaSeries(%r, %s)" % (self.scalar, self.series.render())


def _shift_phases(shift, alg):
    """(e^(2 pi i shift), e^(pi i shift)) lifted into the algebra scalars."""
    shift = as_fraction(shift)
    if shift == 0:
        return alg.scalar(1), alg.scalar(1)
    if alg.ring == EXACT:
        # only integer and half-integer shifts stay rational
        if shift.denominator == 1:
            return alg.scalar(1), alg.scalar((-1) ** shift.numerator)
        raise ThetaError("scalar shift %s needs the numeric coefficient "
                         "ring" % shift)
    ph = cmath.exp(2j * math.pi * float(shift))
    ph_half = cmath.exp(1j * math.pi * float(shift))
    return ph, ph_half


def euler_c_series(trunc_exp, one):
    """c(q) = prod_(n>=1) (1 - q^n), truncated below ``trunc_exp``."""
    n_max = math.ceil(Fraction(trunc_exp))
    return product_of_factors(
        [(n, -one, 1) for n in range(1, n_max + 1)], trunc_exp, one)


def theta_hat_qexp(kind, arg, trunc_exp, alg):
    """Reduced formal expansion of a theta kind at x + l*t + beta.

    Returns a :class:`QSeries` over LaurentZ-with-NilPoly coefficients.
    The true theta function is ``THETA_TRUE_SCALAR[kind].value()`` times
    this (the reduced series hides only that constant, never q, z or
    Chern-root structure).
    """
    if kind not in _KIND_DATA:
        raise ThetaError("unknown theta kind %r" % (kind,))
    trunc_exp = Fraction(trunc_exp)
    if trunc_exp <= 0:
        raise ThetaError("trunc must be positive, got %s" % trunc_exp)
    sign, has_prefactor, half_q = _KIND_DATA[kind]
    nil = arg.nil if arg.nil is not None else alg.zero()
    zw = arg.z_weight
    if has_prefactor and zw.denominator != 1:
        raise ThetaError("theta/theta1 need an integer z-weight "
                         "(half-integer would force quarter powers of z)")
    ph, ph_half = _shift_phases(arg.shift, alg)

    one_l = LaurentZ.const(alg.one())
    e_half = (nil.scale(Fraction(1, 2))).exp()
    e_full = e_half * e_half
    e_half_inv = e_half.inverse()
    e_full_inv = e_half_inv * e_half_inv

    key_full = int(2 * zw)          # z^zw in half-units
    zf = LaurentZ.monomial(e_full.scale(ph), key_full)
    zf_inv = LaurentZ.monomial(e_full_inv.scale(_inv_phase(ph, alg)),
                               -key_full)

    factors = []
    n = 1
    while True:
        e = Fraction(2 * n - 1, 2) if half_q else Fraction(n)
        if e >= trunc_exp:
            break
        factors.append((e, sign * zf, 1))
        factors.append((e, sign * zf_inv, 1))
        n += 1
    body = product_of_factors(factors, trunc_exp, one_l)
    body = body * euler_c_series(trunc_exp, one_l)

    if has_prefactor:
        key_half = int(zw)
        pre = (LaurentZ.monomial(e_half.scale(ph_half), key_half)
               + LaurentZ.monomial(
                   e_half_inv.scale(_inv_phase(ph_half, alg)) if sign > 0
                   else -(e_half_inv.scale(_inv_phase(ph_half, alg))),
                   -key_half))
        body = body * QSeries.const(pre)
        body = body.shift(Fraction(1, 8))
        body = body.truncate_exponent(trunc_exp)
    return body


def _inv_phase(ph, alg):
    if isinstance(ph, complex):
        return 1.0 / ph
    return as_fraction(1) / ph if ph not in (1, -1) else ph


def theta_qexp(kind, arg, trunc_exp, alg):
    """Formal theta expansion with its transcendental scalar attached."""
    return ThetaSeries(THETA_TRUE_SCALAR[kind],
                       theta_hat_qexp(kind, arg, trunc_exp, alg))


def theta_hat_prime0(trunc_exp):
    """Reduced theta'(0): q^(1/8) c(q)^3 with exact scalar coefficients.

    The true derivative is 2*pi times this; the identity against the
    product formula is exercised in the test suite (term-by-term
    differentiation and a finite-difference oracle).
    """
    one = Fraction(1)
    c = euler_c_series(trunc_exp, one)
    return (c * c * c).shift(Fraction(1, 8)).truncate_exponent(trunc_exp)


def theta_prime_zero_formal(trunc_exp):
    return ThetaSeries(Scalar(1, 0, 1), theta_hat_prime0(trunc_exp))


# ---------------------------------------------------------------------------
# numeric backend
# ---------------------------------------------------------------------------

def _check_tau(tau):
    tau = complex(tau)
    if tau.imag <= 0:
        raise ThetaError("Im tau must be positive, got %s" % tau)
    return tau


def _product_terms(tau, v=0.0, eps=1e-18, minimum=24):
    """Number of product factors for truncation error below ``eps``.

    Dropping factors beyond N changes the product by a relative
    O(|q|^N e^(2 pi |Im v|)), so N is chosen with that growth included.
    """
    im_v = abs(complex(v).imag)
    n = (im_v + math.log(1.0 / eps) / TWO_PI) / complex(tau).imag
    return max(minimum, int(math.ceil(n)) + 8)


def theta_numeric(kind, v, tau, terms=None):
    """Truncated-product value of a theta kind at (v, tau), Im tau > 0."""
    tau = _check_tau(tau)
    v = complex(v)
    if kind not in _KIND_DATA:
        raise ThetaError("unknown theta kind %r" % (kind,))
    sign, has_prefactor, half_q = _KIND_DATA[kind]
    n = terms if terms is not None else _product_terms(tau, v)
    q = cmath.exp(2j * math.pi * tau)
    e_plus = cmath.exp(2j * math.pi * v)
    e_minus = 1.0 / e_plus
    out = 1.0 + 0.0j
    for j in range(1, n + 1):
        qj = cmath.exp(2j * math.pi * tau * (j - 0.5)) if half_q \
            else cmath.exp(2j * math.pi * tau * j)
        out *= (1.0 + sign * qj * e_plus) * (1.0 + sign * qj * e_minus)
        out *= (1.0 - cmath.exp(2j * math.pi * tau * j))   # c(q)
    if has_prefactor:
        out *= cmath.exp(1j * math.pi * tau / 4.0)         # q^(1/8)
        if sign < 0:
            out *= 2.0 * cmath.sin(math.pi * v)
        else:
            out *= 2.0 * cmath.cos(math.pi * v)
    return out


def c_q_numeric(tau, terms=None):
    tau = _check_tau(tau)
    n = terms if terms is not None else _product_terms(tau)
    out = 1.0 + 0.0j
    for j in range(1, n + 1):
        out *= 1.0 - cmath.exp(2j * math.pi * tau * j)
    return out


def theta_prime_zero(tau, terms=None):
    """theta'(0, tau) = 2 pi q^(1/8) c(q)^3."""
    tau = _check_tau(tau)
    c = c_q_numeric(tau, terms)
    return TWO_PI * cmath.exp(1j * math.pi * tau / 4.0) * c ** 3


def theta_hat_numeric(kind, v, tau, terms=None):
    """Reduced numeric value: theta / THETA_TRUE_SCALAR[kind]."""
    return theta_numeric(kind, v, tau, terms) / THETA_TRUE_SCALAR[kind].value()


def theta_hat_jet(kind, t, tau, z_weight, nil, shift=0.0, terms=None):
    """Reduced theta value at x + l*t + shift as a jet in nilpotents.

    ``nil`` lives in a numeric :class:`NilAlgebra`; the result is the
    NilPoly whose coefficient of a degree-2p monomial is the reduced
    p-th derivative data (true jet = value under the global
    (2 pi i)^degree convention).  ``shift`` may be any complex number
    (e.g. (c tau + d) beta).
    """
    tau = _check_tau(tau)
    if kind not in _KIND_DATA:
        raise ThetaError("unknown theta kind %r" % (kind,))
    sign, has_prefactor, half_q = _KIND_DATA[kind]
    alg = nil.alg
    if alg.ring != NUMERIC:
        raise ThetaError("theta_hat_jet needs a numeric algebra")
    zw = Fraction(z_weight)
    if has_prefactor and zw.denominator != 1:
        raise ThetaError("theta/theta1 need an integer z-weight")
    v0 = complex(zw) * t + complex(shift)
    n = terms if terms is not None else _product_terms(tau, v0)

    e_half = nil.scale(Fraction(1, 2)).exp()
    e_half_inv = e_half.inverse()
    e_full = e_half * e_half
    e_full_inv = e_half_inv * e_half_inv
    z_full = cmath.exp(2j * math.pi * v0)
    zf = e_full.scale(z_full)
    zf_inv = e_full_inv.scale(1.0 / z_full)

    out = alg.one()
    for j in range(1, n + 1):
        qj = cmath.exp(2j * math.pi * tau * (j - 0.5)) if half_q \
            else cmath.exp(2j * math.pi * tau * j)
        out = out * (alg.one() + zf.scale(sign * qj))
        out = out * (alg.one() + zf_inv.scale(sign * qj))
        out = out * alg.const(1.0 - cmath.exp(2j * math.pi * tau * j))
    if has_prefactor:
        z_half = cmath.exp(1j * math.pi * v0)
        pre = e_half.scale(z_half) + e_half_inv.scale(
            sign / z_half if sign > 0 else -1.0 / z_half)
        out = out * pre
        out = out.scale(cmath.exp(1j * math.pi * tau / 4.0))
    return out


# ---------------------------------------------------------------------------
# transformation-law residuals
# ---------------------------------------------------------------------------

def check_elliptic_shift(kind, v, tau, a, b):
    """|theta_kind(v + a tau + b) - factor * theta_kind(v)|.

    The one-step laws are theta(t+1) = -theta(t) and
    theta(t+tau) = -+ q^(-1/2) e^(-2 pi i t) theta(t) (minus for theta,
    plus for theta1); the factor for general integers a, b is composed
    multiplicatively from these.
    """
    if kind not in (THETA, THETA1):
        raise ThetaError("elliptic shift law is stated for theta and theta1")
    tau = _check_tau(tau)
    v = complex(v)
    s = -1.0 if kind == THETA else 1.0
    factor = 1.0 + 0.0j
    cur = v
    steps = abs(int(a))
    for _ in range(steps):
        if a > 0:
            factor *= s * cmath.exp(-1j * math.pi * tau) \
                * cmath.exp(-2j * math.pi * cur)
            cur += tau
        else:
            cur -= tau
            factor /= s * cmath.exp(-1j * math.pi * tau) \
                * cmath.exp(-2j * math.pi * cur)
    factor *= (-1.0) ** abs(int(b))
    lhs = theta_numeric(kind, v + a * tau + b, tau)
    rhs = factor * theta_numeric(kind, v, tau)
    return abs(lhs - rhs)


_S_SWAP = {THETA: THETA, THETA1: THETA2, THETA2: THETA1, THETA3: THETA3}
_T_SWAP = {THETA: THETA, THETA1: THETA1, THETA2: THETA3, THETA3: THETA2}
_TINV_SWAP = _T_SWAP  # the swap is an involution


def _apply_gen(gen, t, tau):
    if gen == "S":
        return t / tau, -1.0 / tau
    if gen == "T":
        return t, tau + 1.0
    if gen == "Ti":
        return t, tau - 1.0
    raise ThetaError("unknown generator %r" % (gen,))


def _gen_factor(gen, kind, t, tau):
    """(factor, new_kind) with theta_kind(gen(t,tau)) = factor*theta_new(t,tau).

    The square root uses the principal branch, arg in (-pi/2, pi/2];
    tau/i has positive real part on the upper half plane so this is
    unambiguous.
    """
    if gen == "S":
        root = cmath.sqrt(tau / 1j)
        fac = root * cmath.exp(1j * math.pi * t * t / tau)
        if kind == THETA:
            fac = fac / 1j
        return fac, _S_SWAP[kind]
    if gen == "T":
        fac = cmath.exp(1j * math.pi / 4.0) if kind in (THETA, THETA1) else 1.0
        return fac, _T_SWAP[kind]
    if gen == "Ti":
        fac = cmath.exp(-1j * math.pi / 4.0) if kind in (THETA, THETA1) else 1.0
        return fac, _TINV_SWAP[kind]
    raise ThetaError("unknown generator %r" % (gen,))


def parse_word(word):
    """Split a word like "ST" or "S,Ti" into generator tokens."""
    if isinstance(word, (list, tuple)):
        return list(word)
    out = []
    i = 0
    while i < len(word):
        if word[i] in ",* ":
            i += 1
            continue
        if word[i] == "S":
            out.append("S")
            i += 1
        elif word[i] == "T":
            if i + 1 < len(word) and word[i + 1] == "i":
                out.append("Ti")
                i += 2
            else:
                out.append("T")
                i += 1
        else:
            raise ThetaError("cannot parse generator word %r" % word)
    return out


def modular_word_transform(kind, t, tau, word):
    """(t', tau', factor, final_kind) for theta_kind at word(t, tau).

    ``word`` acts as the composition g1 g2 ... gn (leftmost outermost);
    the factor is composed via the cocycle: each generator's one-step
    factor from the transformation table, evaluated at the partially
    transformed point.
    """
    gens = parse_word(word)
    # points[j] = (g_{j+1} ... g_n)(t, tau), from innermost outwards
    pts = [(complex(t), _check_tau(tau))]
    for g in reversed(gens):
        t1, tau1 = _apply_gen(g, *pts[0])
        pts.insert(0, (t1, tau1))
    factor = 1.0 + 0.0j
    cur_kind = kind
    for i, g in enumerate(gens):
        inner_t, inner_tau = pts[i + 1]
        fac, cur_kind = _gen_factor(g, cur_kind, inner_t, inner_tau)
        factor *= fac
    (t_out, tau_out) = pts[0]
    return t_out, tau_out, factor, cur_kind


def check_modular(kind, v, tau, word):
    """Residual of the transformation law along an S,T word.

    Returns ``(residual, final_kind)``; the final kind records the
    theta1 <-> theta2 and theta2 <-> theta3 swaps.
    """
    t_out, tau_out, factor, final_kind = modular_word_transform(
        kind, v, tau, word)
    lhs = theta_numeric(kind, t_out, tau_out)
    rhs = factor * theta_numeric(final_kind, complex(v), complex(tau))
    return abs(lhs - rhs), final_kind


# ---------------------------------------------------------------------------
# lattice theta functions and the character anomaly
# ---------------------------------------------------------------------------

class Lattice:
    """Positive definite lattice given by a rational Gram matrix."""

    __slots__ = ("gram", "rank", "labels")

    def __init__(self, gram, labels=None):
        self.gram = [[as_fraction(x) for x in row] for row in gram]
        self.rank = len(self.gram)
        for row in self.gram:
            if len(row) != self.rank:
                raise ThetaError("gram matrix must be square")
        for i in range(self.rank):
            for j in range(self.rank):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ThetaError("gram matrix must be symmetric")
        if not self._positive_definite():
            raise ThetaError("gram matrix must be positive definite")
        self.labels = tuple(labels) if labels else tuple(
            "e%d" % i for i in range(self.rank))

    def _positive_definite(self):
        # leading principal minors, exact
        g = self.gram
        for k in range(1, self.rank + 1):
            if _det([row[:k] for row in g[:k]]) <= 0:
                return False
        return True

    def pairing(self, x, y):
        return sum(self.gram[i][j] * x[i] * y[j]
                   for i in range(self.rank) for j in range(self.rank))


def _det(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m[0][0]
    out = Fraction(0)
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        out += sign * m[0][j] * _det(minor)
        sign = -sign
    return out


def lattice_theta(lat, lam_bar, m, z, tau, u=0.0, tol=1e-12):
    """Theta function of a positive definite lattice.

    e^(2 pi i m u) * sum over gamma in M + lam_bar/m of
    e^(pi i m tau (gamma,gamma) + 2 pi i m (gamma, z)), all vectors in
    generator coordinates and paired through the Gram matrix.  Shells
    are added until the discarded tail bound (Cauchy-Schwarz estimate on
    the z term against the Gaussian decay) is below tol/10; returns
    ``(value, tail_bound)``.
    """
    tau = _check_tau(tau)
    if m <= 0:
        raise ThetaError("level must be positive")
    rank = lat.rank
    offset = [as_fraction(c) / m for c in lam_bar] if lam_bar else \
        [Fraction(0)] * rank
    z = [complex(c) for c in (z if z is not None else [0.0] * rank)]
    im_z = [c.imag for c in z]
    bz = math.sqrt(max(0.0, float(lat.pairing(im_z, im_z)))) \
        if any(im_z) else 0.0

    decay = math.pi * m * tau.imag

    def shell_bound(cmin, count):
        return count * math.exp(-decay * cmin + TWO_PI * m * bz
                                * math.sqrt(max(cmin, 0.0)))

    # inverse Gram diagonal for the enumeration box
    inv_diag = _inv_diag(lat.gram)
    cutoff = 4.0
    while True:
        box = [int(math.floor(math.sqrt(cutoff * float(d)))) + 2
               for d in inv_diag]
        pts = []
        for c in _int_box(box, rank):
            gamma = [Fraction(ci) + oi for ci, oi in zip(c, offset)]
            norm = lat.pairing(gamma, gamma)
            if float(norm) <= cutoff:
                pts.append((gamma, norm))
        outer = [p for p in pts if float(p[1]) > cutoff - 1.0]
        if shell_bound(cutoff - 1.0, max(len(outer), 1)) < tol / 10.0:
            break
        cutoff *= 1.6
    # fixed deterministic summation order: by norm then coordinates
    value = 0.0 + 0.0j
    for gamma, norm in sorted(pts, key=lambda p: (float(p[1]),
                                                  tuple(map(float, p[0])))):
        gz = lat.pairing(gamma, z)
        value += cmath.exp(1j * math.pi * m * tau * float(norm)
                           + 2j * math.pi * m * complex(gz))
    value *= cmath.exp(2j * math.pi * m * complex(u))
    tail = shell_bound(cutoff, max(len(outer), 1)) / max(1e-12, 1.0 - math.exp(-decay))
    return value, tail


def _inv_diag(gram):
    """Diagonal of the inverse Gram matrix (exact cofactor formula)."""
    n = len(gram)
    d = _det(gram)
    out = []
    for i in range(n):
        minor = [[gram[r][c] for c in range(n) if c != i]
                 for r in range(n) if r != i]
        out.append(_det(minor) / d)
    return out


def _int_box(box, rank):
    if rank == 0:
        yield ()
        return
    for head in range(-box[0], box[0] + 1):
        for tail in _int_box(box[1:], rank - 1):
            yield (head,) + tail


class CharAnomalyInput:
    """Numeric data for the character anomaly exponent.

    level m, (Lambda + 2 rho, Lambda), the dual Coxeter number and the
    dimension of the underlying simple Lie algebra, all as opaque
    numbers.
    """

    __slots__ = ("level", "norm", "dual_coxeter", "dim_g")

    def __init__(self, level, norm, dual_coxeter, dim_g):
        self.level = int(level)
        self.norm = as_fraction(norm)
        self.dual_coxeter = int(dual_coxeter)
        if self.dual_coxeter < 1:
            raise ThetaError("dual Coxeter number must be >= 1")
        self.dim_g = int(dim_g)
        if self.level + self.dual_coxeter == 0:
            raise ThetaError("level + dual Coxeter must be nonzero")


def char_anomaly(inp):
    """(Lambda+2rho,Lambda)/(2(m+h)) - m dim g/(24(m+h)), exact."""
    denom = inp.level + inp.dual_coxeter
    return (inp.norm / (2 * denom)
            - Fraction(inp.level * inp.dim_g, 24 * denom))
