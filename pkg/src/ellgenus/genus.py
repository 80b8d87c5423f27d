"""Assembly of equivariant genus series from fixed-point data.

Two evaluation regimes:

* the q-series regime (:func:`genus_qseries`): exact coefficients, one
  Laurent-fraction in z per q-exponent, over the base cohomology
  algebra.  This is what the rigidity and vanishing checks consume.
* the direct-numeric regime (:func:`genus_point`): the same fixed-point
  expression evaluated at a concrete complex (t, tau) via truncated
  theta products, giving a base-cohomology-valued number.  The modular
  and lattice-shift checks need this, because those transformations
  reshuffle the q-grading and cannot act on a truncated q-series.

Everything is computed in "reduced" normalization: theta factors are
divided by their transcendental constants, which provably cancel in
every operator considered here (the residual scalar prefactor of a
:class:`GenusSeries` is exactly 1 and is still tracked for the record).
A reduced value with a degree-2p base class implicitly carries
(2 pi i)^p; all verdicts compare like with like, so the convention
never leaks.
"""

import cmath
import math
from fractions import Fraction

from .cohomology import sinhc_half
from .errors import ModelError, PoleError, SeriesError
from .laurent import LaurentZ
from .model import SpincStack, WittenStack, epsilon_A
from .rings import EXACT, NUMERIC
from .series import QSeries, product_of_factors
from .theta import (THETA, THETA1, THETA2, THETA3, Scalar, ThetaArg,
                    c_q_numeric, theta_hat_jet, theta_hat_numeric,
                    theta_hat_prime0, theta_hat_qexp)
from .zfrac import FracZ

SYMBOLIC_Z = "symbolic_z"
NUMERIC_MODE = "numeric"

_J_KIND = {1: THETA1, 2: THETA2, 3: THETA3}


class GenusSeries:
    """Computed genus q-expansion with Laurent-fraction z-coefficients."""

    def __init__(self, series, base_alg, model, spec, qmax,
                 scalar=None, mode=SYMBOLIC_Z):
        self.series = series
        self.base_alg = base_alg
        self.model = model
        self.spec = spec
        self.qmax = Fraction(qmax)
        self.scalar = scalar if scalar is not None else Scalar(1)
        self.prefactor_power_2pi_i = 0
        self.mode = mode

    def coefficients(self):
        """Sorted (exponent, FracZ) pairs up to and including qmax."""
        return [(e, c) for e, c in self.series.known_items()
                if e <= self.qmax]

    def exponents(self):
        return [e for e, _ in self.coefficients()]

    def laurent_coefficients(self):
        """Reduce every coefficient to a Laurent polynomial in z.

        Raises if some coefficient is genuinely rational with poles (a
        broken model); the sum over fixed components of a valid model
        always reduces.
        """
        out = {}
        for e, c in self.coefficients():
            out[e] = c.as_laurent()
        return out

    def eval_w(self, w):
        """Numeric substitution z^(1/2) = w: (exponent, NilPoly) pairs."""
        return [(e, c.eval_w(w)) for e, c in self.coefficients()]

    def render(self):
        return self.series.render(coeff_str=lambda c: repr(c))

    def __repr__(self):
        return "GenusSeries(%s, qmax=%s)" % (self.model.name, self.qmax)


# ---------------------------------------------------------------------------
# scalar q-series building blocks
# ---------------------------------------------------------------------------

def theta_zero_scalar(j, trunc_exp):
    """theta_j-hat(0, tau) as an exact scalar q-series (j = 1, 2, 3)."""
    one = Fraction(1)
    n_max = math.ceil(Fraction(trunc_exp))
    if j == 1:
        body = product_of_factors(
            [(n, one, 2) for n in range(1, n_max + 1)], trunc_exp, one)
        body = 2 * body * _euler_c(trunc_exp)
        return body.shift(Fraction(1, 8)).truncate_exponent(trunc_exp)
    sign = -1 if j == 2 else 1
    body = product_of_factors(
        [(Fraction(2 * n - 1, 2), sign * one, 2)
         for n in range(1, n_max + 2)], trunc_exp, one)
    return body * _euler_c(trunc_exp)


def _euler_c(trunc_exp):
    from .theta import euler_c_series
    return euler_c_series(trunc_exp, Fraction(1))


def theta_over_root(y, trunc_exp):
    """theta-hat(y)/y for a weight-zero tangent root: a unit series.

    Equals q^(1/8) c(q) sinhc(y) prod (1 - q^n E)(1 - q^n E^-1) with
    E = exp(y); the sin factor's zero is divided out exactly.
    """
    alg = y.alg
    e_full = y.exp()
    e_inv = e_full.inverse()
    n_max = math.ceil(Fraction(trunc_exp))
    factors = []
    for n in range(1, n_max + 1):
        factors.append((n, -e_full, 1))
        factors.append((n, -e_inv, 1))
    body = product_of_factors(factors, trunc_exp, alg.one())
    body = body * QSeries.const(sinhc_half(y))
    body = body * _euler_c(trunc_exp)
    return body.shift(Fraction(1, 8)).truncate_exponent(trunc_exp)


def _collapse_scalar(series):
    """QSeries over LaurentZ(NilPoly) with only z^0 constants -> scalars."""
    def pick(lz):
        if set(lz.coeffs) - {0}:
            raise SeriesError("series is not z-free")
        c = lz.coeffs.get(0)
        return c.constant_term() if c is not None else 0
    return series.map_coeffs(pick)


# ---------------------------------------------------------------------------
# symbolic assembly
# ---------------------------------------------------------------------------

def _lift_laurent(series, alg):
    return series.map_coeffs(lambda c: FracZ.from_laurent(alg, c))

def _lift_nil(series, alg):
    return series.map_coeffs(lambda c: FracZ.from_nil(alg, c))


def _component_core(comp, trunc_exp):
    """prod_j y'_j/theta-hat(y'_j) / prod theta-hat(x + m t): the part
    shared by every operator."""
    alg = comp.alg
    acc = QSeries.const(FracZ.one(alg))
    for y in comp.tangent_roots:
        acc = acc * _lift_nil(theta_over_root(y, trunc_exp).invert(), alg)
    for b in comp.normal:
        for x in b.roots:
            th = theta_hat_qexp(THETA, ThetaArg(b.weight, x, 0),
                                trunc_exp, alg)
            acc = acc * _lift_laurent(th, alg).invert()
    return acc


def _rj_factor(parts, j, trunc_exp, alg):
    """prod theta_j-hat(u + n t) over the V decomposition."""
    acc = QSeries.const(FracZ.one(alg))
    kind = _J_KIND[j]
    for b in parts:
        for u in b.roots:
            th = theta_hat_qexp(kind, ThetaArg(b.weight, u, 0),
                                trunc_exp, alg)
            acc = acc * _lift_laurent(th, alg)
    return acc


def _w_factor(parts, shift, trunc_exp, alg):
    """prod theta-hat(omega + r t + shift) over the W decomposition."""
    acc = QSeries.const(FracZ.one(alg))
    for b in parts:
        for w in b.roots:
            th = theta_hat_qexp(THETA, ThetaArg(b.weight, w, shift),
                                trunc_exp, alg)
            acc = acc * _lift_laurent(th, alg)
    return acc


def _push_series(series, push, base_alg):
    def push_coeff(fz):
        num = LaurentZ({e: push.integrate(c)
                        for e, c in fz.num.coeffs.items()})
        return FracZ(base_alg, num, fz.den)
    return series.map_coeffs(push_coeff)


def _table_factor(table, comp, trunc_exp, alg):
    from .expand import char_table_series
    return char_table_series(table, comp, trunc_exp)


def genus_qseries(model, spec, qmax):
    """The genus series of (model, operator) as exact data.

    ``qmax`` bounds reported exponents.  Loop-type operators use the
    theta-quotient form of the loop-space fixed point formula; spin-c
    stacks use the F_j / F_j-beta quotients.  The beta variants need
    complex scalars (roots of unity) and reject a nontrivial A-twist
    here: that operator mixes q^(c beta) powers into the grading and
    lives in the direct-numeric regime.
    """
    qmax = Fraction(qmax)
    trunc_exp = qmax + 2
    variant = spec.variant
    needs_numeric = variant == "spinc" and spec.beta is not None
    if needs_numeric and model.base_alg.ring == EXACT:
        model = model.numeric()
    if variant == "spinc" and spec.A is not None \
            and spec.A != ((1, 0), (0, 1)):
        raise ModelError("the A-twisted beta operator is only available "
                         "in the direct-numeric regime (genus_point)")
    base_alg = model.base_alg
    k = model.k

    total = None
    for comp in model.components:
        alg = comp.alg
        acc = _component_core(comp, trunc_exp)
        if variant == "loop" and spec.table is not None:
            acc = acc * _lift_laurent(
                _table_factor(spec.table, comp, trunc_exp, alg), alg)
        elif variant == "loop" and spec.twist is not None:
            parts = comp.v_parts if comp.v_parts else comp.tangent_v_parts()
            j = int(spec.twist[1])
            acc = acc * _rj_factor(parts, j, trunc_exp, alg)
        elif variant == "spinc":
            if comp.v_parts:
                acc = acc * _rj_factor(comp.v_parts, spec.j, trunc_exp, alg)
            if comp.w_parts:
                shift = spec.beta if spec.beta is not None else 0
                acc = acc * _w_factor(comp.w_parts, shift, trunc_exp, alg)
        contrib = _push_series(acc, comp.push, base_alg)
        total = contrib if total is None else total + contrib

    # global prefactors (all scalar q-series or rational constants)
    prime = theta_hat_prime0(trunc_exp)
    if variant in ("witten", "loop"):
        total = total * (prime ** k)
        if variant == "loop" and spec.twist is not None:
            j = int(spec.twist[1])
            l = model.v_half_rank(use_tangent=not model.components[0].v_parts)
            if l:
                total = total * (theta_zero_scalar(j, trunc_exp).invert() ** l)
            if j == 1:
                total = total.scale(Fraction(2 ** l))
        if variant == "loop" and spec.anomaly is not None:
            from .theta import char_anomaly
            total = total.shift(char_anomaly(spec.anomaly))
    else:
        r = model.w_rank()
        l = model.v_half_rank()
        if spec.beta is None:
            power = k - r
            if power > 0:
                total = total * (prime ** power)
            elif power < 0:
                total = total * (prime.invert() ** (-power))
        else:
            total = total * (prime ** k)
            beta_alg = model.components[0].alg
            th_beta = _collapse_scalar(theta_hat_qexp(
                THETA, ThetaArg(0, beta_alg.zero(), spec.beta),
                trunc_exp, beta_alg))
            total = total * (th_beta.invert() ** r)
        if l:
            total = total * (theta_zero_scalar(spec.j, trunc_exp).invert()
                             ** l)

    if total.trunc_exponent() is not None \
            and total.trunc_exponent() <= qmax:
        raise SeriesError("internal truncation margin too small")
    if base_alg.ring != EXACT:
        total = total.map_coeffs(lambda c: c.prune_small())
    mode = SYMBOLIC_Z if base_alg.ring == EXACT else NUMERIC_MODE
    return GenusSeries(total, base_alg, model, spec, qmax, mode=mode)


# ---------------------------------------------------------------------------
# direct numeric evaluation
# ---------------------------------------------------------------------------

def _pole_guard(jet, comp, weight, t):
    c0 = jet.constant_term()
    if abs(c0) < 1e-13:
        raise PoleError(
            "theta denominator vanishes on component %r at weight %d "
            "(t = %s hits the singular set; retry with a shifted sample)"
            % (comp.name, weight, t))
    return jet


def tangent_jet(y, tau, terms=None):
    """Numeric jet of theta-hat(y)/y at a weight-zero root."""
    alg = y.alg
    q = cmath.exp(2j * math.pi * tau)
    n = terms if terms is not None else 40
    e_full = y.exp()
    e_inv = e_full.inverse()
    out = sinhc_half(y)
    for j in range(1, n + 1):
        qj = q ** j
        out = out * (alg.one() + e_full.scale(-qj))
        out = out * (alg.one() + e_inv.scale(-qj))
        out = out * alg.const(1.0 - qj)
    return out.scale(cmath.exp(1j * math.pi * tau / 4.0))


def genus_point(model, spec, t, tau, terms=None):
    """Direct numeric value of the genus at (t, tau), reduced convention.

    Returns a NilPoly over the numeric base algebra.  Raises
    :class:`PoleError` when a theta denominator is singular at the
    sample (e.g. rational t hitting a rotation weight).
    """
    model = model.numeric()
    tau = complex(tau)
    t = complex(t)
    if tau.imag <= 0:
        raise ModelError("Im tau must be positive")
    base_alg = model.base_alg
    k = model.k
    variant = spec.variant

    if spec.variant == "spinc" and spec.A is not None:
        (a, b), (c, d) = spec.A
    else:
        a, b, c, d = 1, 0, 0, 1
    beta = spec.beta if variant == "spinc" else None
    shift_val = complex(beta) * (c * tau + d) if beta is not None else 0.0

    total = base_alg.zero()
    for comp in model.components:
        alg = comp.alg
        acc = alg.one()
        for y in comp.tangent_roots:
            acc = acc * tangent_jet(y, tau, terms).inverse()
        for bnd in comp.normal:
            if abs(cmath.sin(math.pi * bnd.weight * t)) < 1e-12 \
                    and abs(t.imag) < 1e-12:
                raise PoleError("rational sample t = %s hits weight %d on "
                                "component %r" % (t, bnd.weight, comp.name))
            for x in bnd.roots:
                jet = theta_hat_jet(THETA, t, tau, bnd.weight, x,
                                    terms=terms)
                acc = acc * _pole_guard(jet, comp, bnd.weight, t).inverse()
        if variant == "loop" and spec.table is not None:
            from .expand import char_table_jet
            acc = acc * char_table_jet(spec.table, comp, t, tau, terms)
        elif variant == "loop" and spec.twist is not None:
            parts = comp.v_parts if comp.v_parts else comp.tangent_v_parts()
            kind = _J_KIND[int(spec.twist[1])]
            for bnd in parts:
                for u in bnd.roots:
                    acc = acc * theta_hat_jet(kind, t, tau, bnd.weight, u,
                                              terms=terms)
        elif variant == "spinc":
            kind = _J_KIND[spec.j]
            for bnd in comp.v_parts:
                for u in bnd.roots:
                    acc = acc * theta_hat_jet(kind, t, tau, bnd.weight, u,
                                              terms=terms)
            for bnd in comp.w_parts:
                for w in bnd.roots:
                    jet = theta_hat_jet(THETA, t, tau, bnd.weight, w,
                                        shift=shift_val, terms=terms)
                    if beta is not None and c:
                        # det(W)^(c beta) twist: e^(2 pi i c beta (w + r t))
                        phase = cmath.exp(2j * math.pi * c * float(beta)
                                          * bnd.weight * t)
                        jet = jet * w.scale(Fraction(c) * beta).exp() \
                            .scale(phase)
                    acc = acc * jet
        total = total + comp.push.integrate(acc)

    prime = cmath.exp(1j * math.pi * tau / 4.0) * c_q_numeric(tau) ** 3
    if variant in ("witten", "loop"):
        total = total.scale(prime ** k)
        if variant == "loop" and spec.twist is not None:
            j = int(spec.twist[1])
            l = model.v_half_rank(use_tangent=not model.components[0].v_parts)
            if l:
                total = total.scale(
                    theta_hat_numeric(_J_KIND[j], 0.0, tau) ** (-l))
            if j == 1:
                total = total.scale(float(2 ** l))
        if variant == "loop" and spec.anomaly is not None:
            from .theta import char_anomaly
            total = total.scale(cmath.exp(2j * math.pi * tau
                                          * float(char_anomaly(spec.anomaly))))
    else:
        r = model.w_rank()
        l = model.v_half_rank()
        if beta is None:
            total = total.scale(prime ** (k - r))
        else:
            den = theta_hat_numeric(THETA, shift_val, tau)
            if abs(den) < 1e-13:
                raise PoleError("theta((c tau + d) beta) vanishes")
            total = total.scale(prime ** k / den ** r)
        if l:
            total = total.scale(
                theta_hat_numeric(_J_KIND[spec.j], 0.0, tau) ** (-l))
    return total
