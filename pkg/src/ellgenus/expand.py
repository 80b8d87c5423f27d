"""Bundle expansion of twist stacks and the index-character oracle.

This is the second, independent route to every genus series: expand the
infinite tensor products (symmetric powers of the reduced tangent
bundle, exterior-power stacks of W, the R_j stacks of V) order by order
in q as explicit equivariant K-classes, then apply the fixed-point index
formula

    ch(Ind) = push[ A-hat(fixed tangent) ch(class) e^(line/2)
                    / prod(e^((x+mt)/2) - e^(-(x+mt)/2)) ]

to each coefficient bundle.  Agreement with the theta-quotient assembly
in :mod:`ellgenus.genus`, exact in the rational coefficient ring, is the
central cross-check of the whole package.

An equivariant K-class restricted to a fixed component is represented by
its reduced character: a Laurent polynomial in z whose coefficients are
exponentials of Chern roots (half-integer z-powers allowed, from spinor
weights).
"""

import cmath
import math
from fractions import Fraction

from .cohomology import sinhc_half
from .errors import ModelError
from .laurent import LaurentZ
from .model import SpincStack
from .series import QSeries, product_of_factors
from .zfrac import FracZ


def line_char(weight, root, half=False):
    """Reduced character z^weight e^root of an equivariant line.

    ``half=True`` gives the square root z^(weight/2) e^(root/2), the
    spinor-type factor.
    """
    if half:
        return LaurentZ.monomial(root.scale(Fraction(1, 2)).exp(),
                                 int(weight))
    return LaurentZ.monomial(root.exp(), 2 * int(weight))


def _lines(parts):
    return [(b.weight, r) for b in parts for r in b.roots]


def _one_char(alg):
    return LaurentZ.const(alg.one())


def _real_lines(lines):
    """A real bundle's complexification: every line plus its conjugate."""
    out = []
    for w, r in lines:
        out.append((w, r))
        out.append((-w, -r))
    return out


def s_stack_reduced(lines, trunc_exp, alg):
    """tensor_m S_(q^m) of (sum of lines + conjugates - rank), expanded."""
    one = _one_char(alg)
    n_max = math.ceil(Fraction(trunc_exp))
    factors = []
    pairs = _real_lines(lines)
    for m in range(1, n_max + 1):
        for w, r in pairs:
            factors.append((m, -line_char(w, r), -1))
        factors.append((m, -one, len(pairs)))
    return product_of_factors(factors, trunc_exp, one)


def lambda_w_stack(w_lines, trunc_exp, alg):
    """Lambda_(-1)(W*) tensor_n Lambda_(-q^n)(reduced W + conj W)."""
    one = _one_char(alg)
    n_max = math.ceil(Fraction(trunc_exp))
    q0 = one
    for w, r in w_lines:
        q0 = q0 * (one - line_char(-w, -r))
    factors = []
    for n in range(1, n_max + 1):
        for w, r in _real_lines(w_lines):
            factors.append((n, -line_char(w, r), 1))
        factors.append((n, -one, -2 * len(w_lines)))
    out = product_of_factors(factors, trunc_exp, one)
    return out * QSeries.const(q0)


def lambda_w_beta_stack(w_lines, trunc_exp, alg, y):
    """The root-of-unity stack: Lambda_(-1/y)(red W*) tensor_n
    Lambda_(-y q^n)(red W) Lambda_(-q^n/y)(red W*)."""
    one = _one_char(alg)
    yinv = 1.0 / y
    n_max = math.ceil(Fraction(trunc_exp))
    r = len(w_lines)
    q0 = one
    for w, rt in w_lines:
        q0 = q0 * (one - line_char(-w, -rt).scale(yinv))
    q0 = q0.scale(complex((1 - yinv) ** (-r)))
    factors = []
    for n in range(1, n_max + 1):
        for w, rt in w_lines:
            factors.append((n, -line_char(w, rt).scale(y), 1))
            factors.append((n, -line_char(-w, -rt).scale(yinv), 1))
        factors.append((n, -one.scale(y), -r))
        factors.append((n, -one.scale(yinv), -r))
    out = product_of_factors(factors, trunc_exp, one)
    return out * QSeries.const(q0)


def delta_char(v_lines, alg):
    """Spinor character of V: prod (z^(n/2) e^(u/2) + z^(-n/2) e^(-u/2))."""
    out = _one_char(alg)
    for w, r in v_lines:
        out = out * (line_char(w, r, half=True)
                     + line_char(-w, -r, half=True))
    return out


def rj_class_series(v_parts, j, trunc_exp, alg):
    """R_j(V) as a q-series of reduced characters (j = 1, 2, 3)."""
    one = _one_char(alg)
    lines = _lines(v_parts)
    n_max = math.ceil(Fraction(trunc_exp))
    factors = []
    if j == 1:
        for n in range(1, n_max + 1):
            for w, r in _real_lines(lines):
                factors.append((n, line_char(w, r), 1))
            factors.append((n, one, -len(lines) * 2))
        out = product_of_factors(factors, trunc_exp, one)
        return out * QSeries.const(delta_char(lines, alg))
    sign = -1 if j == 2 else 1
    for n in range(1, n_max + 1):
        e = Fraction(2 * n - 1, 2)
        for w, r in _real_lines(lines):
            factors.append((e, sign * line_char(w, r), 1))
        factors.append((e, sign * one, -len(lines) * 2))
    return product_of_factors(factors, trunc_exp, one)


def tangent_stack(comp, trunc_exp):
    """S_(q^m) stack of the reduced complexified vertical tangent bundle."""
    lines = [(b.weight, r) for b in comp.normal for r in b.roots]
    lines += [(0, y) for y in comp.tangent_roots]
    return s_stack_reduced(lines, trunc_exp, comp.alg)


def char_table_series(table, comp, trunc_exp, alg=None):
    """Character of a positive-energy twist from its weight table.

    ``table`` maps weight tuples (one entry per V line, half-integers
    allowed) to scalar q-series multiplicities; the result substitutes
    u + n t into each weight's exponential.
    """
    alg = comp.alg if alg is None else alg
    lines = _lines(comp.v_parts)
    out = None
    for lam, mult in table.items():
        if len(lam) != len(lines):
            raise ModelError(
                "character table weight tuple %r does not match the %d "
                "V lines of component %r" % (lam, len(lines), comp.name))
        ch = _one_char(alg)
        for lam_j, (n, u) in zip(lam, lines):
            lam_j = Fraction(lam_j)
            key = 2 * lam_j * n
            if key.denominator != 1:
                raise ModelError("weight %s on a z-weight %d line gives "
                                 "a non half-integer z power" % (lam_j, n))
            ch = ch * LaurentZ.monomial(u.scale(lam_j).exp(), int(key))
        if isinstance(mult, QSeries):
            term = mult.map_coeffs(lambda c, _ch=ch: _ch.scale(c))
        else:
            term = QSeries.const(ch.scale(alg.scalar(mult)))
        out = term if out is None else out + term
    if out is None:
        raise ModelError("empty character table")
    return out


def char_table_jet(table, comp, t, tau, terms=None):
    """Numeric value of a table character at (t, tau), as a nil jet."""
    alg = comp.alg
    lines = _lines(comp.v_parts)
    q = cmath.exp(2j * math.pi * tau)
    out = alg.zero()
    for lam, mult in table.items():
        if len(lam) != len(lines):
            raise ModelError("weight tuple %r does not match V lines"
                             % (lam,))
        val = sum(complex(c) * q ** float(e)
                  for e, c in mult.known_items())
        jet = alg.const(val)
        for lam_j, (n, u) in zip(lam, lines):
            lam_j = Fraction(lam_j)
            jet = jet * u.scale(lam_j).exp().scale(
                cmath.exp(2j * math.pi * float(lam_j) * n * t))
        out = out + jet
    return out


# ---------------------------------------------------------------------------
# the oracle: fixed-point index formula applied to expanded classes
# ---------------------------------------------------------------------------

def bundle_expand(model, spec, comp, qmax):
    """The operator's twist stack on one component, as (q-exp, class).

    Returns a QSeries of reduced characters (LaurentZ over the component
    algebra); this is the list of coefficient bundles V_j of the stack,
    each given by its equivariant Chern character at the component.
    """
    trunc_exp = Fraction(qmax) + 1
    alg = comp.alg
    ks = tangent_stack(comp, trunc_exp)
    variant = spec.variant
    if variant == "witten":
        return ks
    if variant == "loop":
        if spec.table is not None:
            return ks * char_table_series(spec.table, comp, trunc_exp)
        parts = comp.v_parts if comp.v_parts else comp.tangent_v_parts()
        j = int(spec.twist[1])
        return ks * rj_class_series(parts, j, trunc_exp, alg)
    # spin-c
    if spec.A is not None and spec.A != ((1, 0), (0, 1)):
        raise ModelError("A-twisted stacks live in the numeric regime")
    if comp.w_parts:
        w_lines = _lines(comp.w_parts)
        if spec.beta is None:
            ks = ks * lambda_w_stack(w_lines, trunc_exp, alg)
        else:
            y = cmath.exp(2j * math.pi * float(spec.beta))
            ks = ks * lambda_w_beta_stack(w_lines, trunc_exp, alg, y)
    if comp.v_parts:
        ks = ks * rj_class_series(comp.v_parts, spec.j, trunc_exp, alg)
    return ks


def lefschetz_kernel(model, comp_series):
    """Apply the fixed-point index formula to per-component class series.

    ``comp_series(comp)`` returns the QSeries of reduced characters of
    the coefficient bundles on that component; the result is the summed,
    pushed-forward character series with Laurent-fraction coefficients.
    """
    base_alg = model.base_alg
    total = None
    for comp in model.components:
        alg = comp.alg
        ks = comp_series(comp)
        # A-hat factor of the fixed tangent directions
        ahat = alg.one()
        for y in comp.tangent_roots:
            ahat = ahat * sinhc_half(y).inverse()
        # spin-c line: z^(l_c/2) e^(c1/2)
        c1 = comp.c1 if comp.c1 is not None else alg.zero()
        line = LaurentZ.monomial(c1.scale(Fraction(1, 2)).exp(), comp.l_c)
        # character denominator
        den = _one_char(alg)
        for b in comp.normal:
            for x in b.roots:
                den = den * (line_char(b.weight, x, half=True)
                             - line_char(-b.weight, -x, half=True))
        den_inv = FracZ.from_laurent(alg, den).inverse()
        pre = FracZ.from_laurent(alg, line.scale(ahat)) * den_inv
        contrib = ks.map_coeffs(
            lambda ch, _pre=pre, _alg=alg:
            _pre * FracZ.from_laurent(_alg, ch))
        from .genus import _push_series
        contrib = _push_series(contrib, comp.push, base_alg)
        total = contrib if total is None else total + contrib
    return total


def index_class(model, class_of):
    """Index character of a single K-class (a character per component).

    ``class_of(comp)`` gives the reduced character (LaurentZ) of the
    class restricted to the component; the result is one FracZ over the
    base algebra.  This is the brute-force holomorphic-Lefschetz path.
    """
    ser = lefschetz_kernel(
        model, lambda comp: QSeries.const(class_of(comp)))
    out = FracZ.const(model.base_alg, 0)
    for _e, c in ser.known_items():
        out = out + c
    return out


def index_character(model, spec, qmax):
    """ch(Ind) via bundle expansion + the fixed-point index theorem.

    Independent of the theta-quotient route: no theta series enter at
    all.  Returns a GenusSeries-compatible object (same coefficient ring
    and normalization as :func:`ellgenus.genus.genus_qseries`).
    """
    from .genus import GenusSeries
    qmax = Fraction(qmax)
    if spec.variant == "spinc" and spec.beta is not None \
            and model.base_alg.ring == "exact":
        model = model.numeric()
    base_alg = model.base_alg
    total = lefschetz_kernel(
        model, lambda comp: bundle_expand(model, spec, comp, qmax))
    if spec.variant == "spinc" and spec.j == 1:
        l = model.v_half_rank()
        if l:
            total = total.scale(Fraction(1, 2 ** l))
    if spec.variant == "loop" and spec.anomaly is not None:
        from .theta import char_anomaly
        total = total.shift(char_anomaly(spec.anomaly))
    from .genus import SYMBOLIC_Z, NUMERIC_MODE
    if base_alg.ring != "exact":
        total = total.map_coeffs(lambda c: c.prune_small())
    mode = SYMBOLIC_Z if base_alg.ring == "exact" else NUMERIC_MODE
    return GenusSeries(total, base_alg, model, spec, qmax, mode=mode)
