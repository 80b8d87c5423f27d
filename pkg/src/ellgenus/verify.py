"""Machine verification of rigidity, vanishing and Jacobi-form behavior.

Checks run in one of two regimes (see :mod:`ellgenus.genus`):

* q-series regime: per q-exponent z-structure.  Rigidity means every
  reported coefficient is constant in z; in exact mode "constant" means
  literally equal, in numeric mode below tolerance after Laurent
  interpolation on the unit circle.
* direct-numeric regime: lattice shifts t -> t + a tau + b and modular
  substitutions mix the q-grading, so those identities are tested on
  direct evaluations of the fixed-point expression at sampled (t, tau).

Sample placement is fixed and documented for reproducibility: t values
walk 0.1 + 0.07 j (mod 1) with small imaginary offsets for pole
avoidance, tau ranges over {i, 1/2 + i, 2i}, and interpolation nodes
avoid low-order roots of unity.
"""

import cmath
import math
from fractions import Fraction

import numpy as np

from .errors import ContourError, InterpolationError
from .genus import genus_point, genus_qseries
from .model import SpincStack, epsilon_A
from .rings import EXACT

TAU_SAMPLES = (1j, 0.5 + 1j, 2j)


def default_t_samples(count=10, imag=0.013):
    return [complex((0.1 + 0.07 * j) % 1.0, imag + 0.003 * (j % 5))
            for j in range(count)]


def unit_circle_w_samples(count):
    """Nodes w = e^(i pi theta) staying clear of low-order roots of unity.

    Near-uniform spread (good Vandermonde conditioning) with a fixed
    irrational-ish offset so no node lands on a 4th or 6th root.
    """
    total = count + 7
    out = []
    for k in range(total):
        theta = (2.0 * (k + 0.3573)) / total % 2.0
        w = cmath.exp(1j * math.pi * theta)
        if min(abs(w ** 4 - 1), abs(w ** 6 - 1)) > 1e-3:
            out.append(w)
        if len(out) == count:
            return out
    raise InterpolationError("could not place %d interpolation nodes"
                             % count)


# ---------------------------------------------------------------------------
# anomaly arithmetic
# ---------------------------------------------------------------------------

class AnomalyReport:
    """Per-component rigidity anomaly and cohomological identity checks."""

    def __init__(self, mode, per_component):
        self.mode = mode
        self.per_component = per_component
        ns = {rec["n"] for rec in per_component}
        self.identities_ok = all(rec["deg2_ok"] and rec["deg4_ok"]
                                 for rec in per_component)
        self.n = ns.pop() if len(ns) == 1 else None
        self.consistent = self.n is not None and self.identities_ok

    def to_dict(self):
        return {
            "mode": self.mode,
            "n": None if self.n is None else str(self.n),
            "consistent": self.consistent,
            "components": [dict(rec, n=str(rec["n"]))
                           for rec in self.per_component],
        }

    def __repr__(self):
        if self.consistent:
            return "AnomalyReport(n=%s, consistent)" % self.n
        return "AnomalyReport(INCONSISTENT: %s)" % (
            [str(rec["n"]) for rec in self.per_component],)


def _spec_v_parts(comp, spec):
    if spec.variant == "loop" and spec.twist is not None \
            and not comp.v_parts:
        return comp.tangent_v_parts()
    if spec.variant == "witten":
        return ()
    return comp.v_parts


def _spec_w_parts(comp, spec):
    return comp.w_parts if spec.variant == "spinc" else ()


def anomaly_n(model, spec):
    """The anomaly n and the identities that make it meaningful.

    Loop case (level m): n = m sum n_v^2 d(n_v) - sum m_g^2 d(m_g) with
    the degree-2 identity m sum n_v u_v = sum m_g x_g and the degree-4
    identity m sum u_v^2 = sum y'^2 + sum x^2.  Spin-c case: W enters
    with weight r_mu, and m is replaced by 1.  All identities are tested
    exactly in the component algebras.
    """
    mode = "spinc" if spec.variant == "spinc" else "loop"
    m_level = model.level if mode == "loop" else 1
    per = []
    for comp in model.components:
        alg = comp.alg
        v_parts = _spec_v_parts(comp, spec)
        w_parts = _spec_w_parts(comp, spec)
        n_val = (m_level * sum(b.weight ** 2 * b.rank_pairs for b in v_parts)
                 + sum(b.weight ** 2 * b.rank_pairs for b in w_parts)
                 - sum(b.weight ** 2 * b.rank_pairs for b in comp.normal))
        lin = alg.zero()
        for b in v_parts:
            for u in b.roots:
                lin = lin + u.scale(Fraction(m_level * b.weight))
        for b in w_parts:
            for w in b.roots:
                lin = lin + w.scale(Fraction(b.weight))
        for b in comp.normal:
            for x in b.roots:
                lin = lin - x.scale(Fraction(b.weight))
        quad = alg.zero()
        for b in v_parts:
            for u in b.roots:
                quad = quad + (u * u).scale(Fraction(m_level))
        for b in w_parts:
            for w in b.roots:
                quad = quad + w * w
        for y in comp.tangent_roots:
            quad = quad - y * y
        for b in comp.normal:
            for x in b.roots:
                quad = quad - x * x
        per.append({
            "component": comp.name,
            "n": Fraction(n_val),
            "deg2_ok": not lin,
            "deg4_ok": not quad,
        })
    return AnomalyReport(mode, per)


# ---------------------------------------------------------------------------
# rigidity
# ---------------------------------------------------------------------------

class RigidityVerdict:
    def __init__(self, constant, entries, mode, qmax, samples=0):
        self.constant = constant
        self.entries = entries
        self.mode = mode
        self.qmax = qmax
        self.samples = samples

    @property
    def verdict(self):
        return "CONSTANT" if self.constant else "NOT_CONSTANT"

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "mode": self.mode,
            "qmax": str(self.qmax),
            "samples": self.samples,
            "entries": [dict(e, exponent=str(e["exponent"]))
                        for e in self.entries],
        }

    def __repr__(self):
        return "RigidityVerdict(%s, %d entries)" % (self.verdict,
                                                    len(self.entries))


def _max_weight(model):
    return max((abs(b.weight) for c in model.components for b in c.normal),
               default=1)


def check_rigidity(model, spec, qmax=2, mode=None, samples=None, tol=1e-8,
                   maxdeg=None, genus=None):
    """Is each q-coefficient of the genus constant in z?

    Exact models are checked symbolically: the summed Laurent fraction
    must reduce to a z-free polynomial.  Numeric mode evaluates the
    coefficients on unit-circle samples and interpolates the Laurent
    polynomial on a declared degree window (default: max rotation
    weight x (q-order + 1) + k, in z-units; at least 2 maxdeg + 1
    sample points).
    """
    gs = genus if genus is not None else genus_qseries(model, spec, qmax)
    if mode is None:
        mode = "symbolic" if gs.base_alg.ring == EXACT else "numeric"
    entries = []
    if mode == "symbolic":
        for e, c in gs.coefficients():
            r = c.reduce()
            if r.den:
                entries.append({
                    "exponent": e, "constant": False,
                    "spread": None, "max_nonconstant": None,
                    "note": "rational in z: residual denominator %r" % r.den,
                })
                continue
            span = r.num.degree_span()
            nonconst = {k: v for k, v in r.num.coeffs.items() if k != 0}
            entries.append({
                "exponent": e,
                "constant": not nonconst,
                "spread": span,
                "max_nonconstant": 0 if not nonconst else "exact-nonzero",
            })
        const = all(en["constant"] for en in entries)
        return RigidityVerdict(const, entries, "symbolic", qmax)

    # numeric: interpolate each coefficient on the unit circle
    wmax = _max_weight(model)
    used = 0
    for e, c in gs.coefficients():
        order = max(0, int(math.ceil(float(e))))
        deg = maxdeg if maxdeg is not None else \
            wmax * (order + 1) + model.k
        window = 2 * deg                      # half-unit z-exponents
        need = 2 * window + 1
        count = max(need, samples or 0)
        ws = unit_circle_w_samples(count)
        if len(set(np.round(np.angle(ws), 9))) < need:
            raise InterpolationError("interpolation samples collide")
        used = max(used, count)
        mat = np.array([[w ** k for k in range(-window, window + 1)]
                        for w in ws])
        if np.linalg.matrix_rank(mat) < need:
            raise InterpolationError("ill-conditioned Laurent interpolation")
        vals = [c.eval_w(w) for w in ws]
        monos = set()
        for v in vals:
            monos.update(v.terms)
        worst = 0.0
        span = None
        for mono in sorted(monos):
            rhs = np.array([complex(v.terms.get(mono, 0)) for v in vals])
            sol, *_ = np.linalg.lstsq(mat, rhs, rcond=None)
            for idx, coef in enumerate(sol):
                k = idx - window
                if k != 0 and abs(coef) > worst:
                    worst = abs(coef)
                if abs(coef) > tol:
                    span = (min(span[0], k) if span else k,
                            max(span[1], k) if span else k)
        entries.append({
            "exponent": e,
            "constant": worst < tol,
            "spread": span,
            "max_nonconstant": worst,
        })
    const = all(en["constant"] for en in entries)
    return RigidityVerdict(const, entries, "numeric", qmax, used)


# ---------------------------------------------------------------------------
# vanishing
# ---------------------------------------------------------------------------

class VanishingReport:
    def __init__(self, verdict, anomaly, qmax, entries, delegated=None):
        self.verdict = verdict
        self.anomaly = anomaly
        self.qmax = qmax
        self.entries = entries
        self.delegated = delegated

    @property
    def ok(self):
        return self.verdict in ("VANISHES", "RIGID")

    def to_dict(self):
        out = {
            "verdict": self.verdict,
            "qmax": str(self.qmax),
            "anomaly": self.anomaly.to_dict(),
            "entries": [dict(e, exponent=str(e["exponent"]))
                        for e in self.entries],
        }
        if self.delegated is not None:
            out["rigidity"] = self.delegated.to_dict()
        return out

    def __repr__(self):
        return "VanishingReport(%s)" % self.verdict


def check_vanishing(model, spec, qmax=2, tol=1e-10):
    """Anomaly-driven verdict: n < 0 demands an identically zero
    character; n = 0 delegates to the rigidity check; n > 0 for the
    untwisted stack can only arise from inconsistent data (minus the
    anomaly is a sum of squares), which the report flags."""
    rep = anomaly_n(model, spec)
    gs = genus_qseries(model, spec, qmax)
    if rep.consistent and rep.n == 0:
        rig = check_rigidity(model, spec, qmax, genus=gs)
        verdict = "RIGID" if rig.constant else "NOT_RIGID"
        return VanishingReport(verdict, rep, qmax, [], delegated=rig)
    entries = []
    allzero = True
    exact = gs.base_alg.ring == EXACT
    for e, c in gs.coefficients():
        if exact:
            zero = not c.num
        else:
            zero = all(abs(v) < tol
                       for w in unit_circle_w_samples(7)
                       for v in c.eval_w(w).terms.values())
        allzero = allzero and zero
        entries.append({"exponent": e, "zero": zero})
    if allzero:
        verdict = "VANISHES"
    else:
        verdict = "NOT_VANISHING"
    if rep.n is not None and rep.n > 0 and spec.variant == "witten":
        # impossible for consistent data: -n is a sum of squares
        verdict = "INCONSISTENT_DATA"
    return VanishingReport(verdict, rep, qmax, entries)


# ---------------------------------------------------------------------------
# Jacobi-form behavior: quasi-periodicity and modular weight
# ---------------------------------------------------------------------------

class JacobiCheckReport:
    def __init__(self, kind, index, weight, lattice, records, tol):
        self.kind = kind
        self.index = index
        self.weight = weight
        self.lattice = lattice
        self.records = records
        self.tol = tol

    @property
    def max_residual(self):
        return max((r["residual"] for r in self.records), default=0.0)

    @property
    def ok(self):
        return bool(self.records) and self.max_residual < self.tol

    def to_dict(self):
        return {
            "check": self.kind,
            "index": str(self.index),
            "weight": self.weight,
            "lattice": self.lattice,
            "tol": self.tol,
            "max_residual": self.max_residual,
            "ok": self.ok,
            "records": self.records,
        }

    def __repr__(self):
        return "JacobiCheckReport(%s, max_residual=%.3g, %s)" % (
            self.kind, self.max_residual, "ok" if self.ok else "FAIL")


def _degree_residual(lhs, rhs):
    """Per-degree relative deviation between two numeric nil jets.

    Returns {degree: (relative residual, scale)}.  Residuals are
    normalized by max(1, |values|): nonzero-index identities involve
    factors like e^(pi n a^2 Im tau) of size 1e16, where only the
    relative comparison is meaningful in double precision.
    """
    agg = {}
    monos = set(lhs.terms) | set(rhs.terms)
    for m in monos:
        p = lhs.alg.mono_degree(m)
        lv = complex(lhs.terms.get(m, 0))
        rv = complex(rhs.terms.get(m, 0))
        d = abs(lv - rv)
        mag = max(abs(lv), abs(rv))
        dcur, mcur = agg.get(p, (0.0, 0.0))
        agg[p] = (max(dcur, d), max(mcur, mag))
    return {p: (d / max(1.0, mag), mag) for p, (d, mag) in agg.items()}


def check_quasi_periodicity(model, spec, n=None, lattice_scale=None,
                            shifts=None, t_samples=None, tau_samples=None,
                            tol=1e-8, terms=None):
    """Residuals of F(t + a tau + b) = e^(-pi i n (a^2 tau + 2 a t)) F(t).

    The lattice is (2Z)^2, or (2NZ)^2 for the beta variant; ``n`` is
    taken from the anomaly report when not supplied (and must then be
    consistent)."""
    if n is None:
        rep = anomaly_n(model, spec)
        if not rep.consistent:
            from .errors import ModelError
            raise ModelError("anomaly report is inconsistent; pass n "
                             "explicitly to test quasi-periodicity")
        n = rep.n
    if lattice_scale is None:
        lattice_scale = 2 * spec.N if getattr(spec, "N", None) else 2
    if shifts is None:
        s = lattice_scale
        shifts = [(s, 0), (0, s), (-s, 0), (s, s)]
    t_samples = t_samples or default_t_samples(4)
    tau_samples = tau_samples or TAU_SAMPLES
    records = []
    for tau in tau_samples:
        for t in t_samples:
            base = genus_point(model, spec, t, tau, terms=terms)
            for (a, b) in shifts:
                lhs = genus_point(model, spec, t + a * tau + b, tau,
                                  terms=terms)
                factor = cmath.exp(-1j * math.pi * float(n)
                                   * (a * a * tau + 2 * a * t))
                rhs = base.scale(factor)
                per_deg = _degree_residual(lhs, rhs)
                for p, (resid, scale) in sorted(per_deg.items()):
                    records.append({
                        "shift": [a, b], "tau": str(tau), "t": str(t),
                        "base_degree": p, "residual": resid,
                        "scale": scale,
                    })
    return JacobiCheckReport("quasi_periodicity", Fraction(n, 2), None,
                             "(%dZ)^2" % lattice_scale, records, tol)


def _as_spinc(spec):
    if spec.variant == "spinc":
        return spec
    if spec.variant == "witten":
        return SpincStack(1)
    raise ValueError("modular-weight checks run on spin-c stacks "
                     "(loop twists correspond to W = 0 stacks up to "
                     "normalization)")


def in_gamma1(A, n):
    (a, b), (c, d) = A
    return a % n == 1 % n and d % n == 1 % n and c % n == 0


def check_modular_weight(model, spec, A, n=None, t_samples=None,
                         tau_samples=None, tol=1e-8, terms=None,
                         collapse=None):
    """Residuals of the weight transformation law under A in SL2(Z).

    F_1(A(t,tau)) = (c tau + d)^(k-r) e^(pi i n c t^2/(c tau + d))
                    Psi_(c tau + d) F_(eps_A)(t, tau)
    with the parity-class swap eps_A; the beta variant carries weight k
    and compares against the A-twisted stack.  When ``collapse`` is set
    (or A lies in Gamma_1(2N) for the beta variant) the identity
    F^beta_(eps_A)(t,tau)^A = F^beta_1(t,tau) is also recorded.
    """
    spec = _as_spinc(spec)
    if n is None:
        rep = anomaly_n(model, spec)
        n = rep.n if rep.consistent else 0
    (a, b), (c, d) = A
    eps = epsilon_A(A)
    r = model.w_rank()
    k = model.k
    if spec.beta is not None:
        weight = k
        target = SpincStack(j=eps, beta=spec.beta, N=spec.N, A=A)
    else:
        weight = k - r
        target = SpincStack(j=eps)
    t_samples = t_samples or default_t_samples(4)
    tau_samples = tau_samples or TAU_SAMPLES
    records = []
    for tau in tau_samples:
        ctd = c * tau + d
        tau_new = (a * tau + b) / ctd
        for t in t_samples:
            lhs = genus_point(model, spec, t / ctd, tau_new, terms=terms)
            rhs0 = genus_point(model, target, t, tau, terms=terms)
            fac = ctd ** weight * cmath.exp(
                1j * math.pi * float(n) * c * t * t / ctd)
            rhs = rhs0.psi_scale(ctd).scale(fac)
            for p, (resid, scale) in sorted(
                    _degree_residual(lhs, rhs).items()):
                records.append({
                    "A": [a, b, c, d], "eps_A": eps, "tau": str(tau),
                    "t": str(t), "base_degree": p, "residual": resid,
                    "scale": scale,
                })
            if spec.beta is not None and (
                    collapse or (collapse is None
                                 and in_gamma1(A, 2 * spec.N))):
                twisted = genus_point(model, target, t, tau, terms=terms)
                plain = genus_point(model, spec, t, tau, terms=terms)
                for p, (resid, scale) in sorted(
                        _degree_residual(twisted, plain).items()):
                    records.append({
                        "A": [a, b, c, d], "eps_A": eps, "tau": str(tau),
                        "t": str(t), "base_degree": p,
                        "residual": resid, "scale": scale,
                        "collapse": True,
                    })
    return JacobiCheckReport("modular_weight", Fraction(n, 2), weight,
                             "SL2(Z)", records, tol)


# ---------------------------------------------------------------------------
# zero counting
# ---------------------------------------------------------------------------

def count_zeros(f, corner, v1, v2, tol=0.1, start=64, max_doublings=8):
    """Zeros of f inside the cell corner + [0,1] v1 + [0,1] v2.

    Winding-number integral of f'/f over the boundary, adaptive
    trapezoid quadrature with central-difference derivatives; the
    result must land within ``tol`` of an integer.
    """
    corners = [corner, corner + v1, corner + v1 + v2, corner + v2, corner]

    def integrate(nseg):
        total = 0.0 + 0.0j
        h = 1e-6
        for i in range(4):
            z0, z1 = corners[i], corners[i + 1]
            dz = (z1 - z0) / nseg
            for s in range(nseg):
                za = z0 + dz * s
                zb = za + dz
                for z in (za, zb):
                    fz = f(z)
                    if abs(fz) < 1e-9:
                        raise ContourError(
                            "contour passes within 1e-9 of a zero/pole at "
                            "%s; shift the cell by a small offset" % z)
                ga = (f(za + h) - f(za - h)) / (2 * h) / f(za)
                gb = (f(zb + h) - f(zb - h)) / (2 * h) / f(zb)
                total += 0.5 * (ga + gb) * dz
        return total / (2j * math.pi)

    nseg = start
    prev = integrate(nseg)
    for _ in range(max_doublings):
        nseg *= 2
        cur = integrate(nseg)
        if abs(cur - prev) < tol / 4:
            prev = cur
            break
        prev = cur
    count = round(prev.real)
    residual = abs(prev - count)
    if residual >= tol:
        raise ContourError(
            "winding integral %.6f did not settle within %.2f of an "
            "integer; shift the cell away from zeros" % (prev.real, tol))
    return int(count)
