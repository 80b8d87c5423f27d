"""Equivariant fixed-point data and operator selection.

A :class:`FixedPointModel` is the complete input of the Lefschetz
assembly: fixed components of a fiberwise circle action, each carrying

* tangent Chern roots of the fixed fiber direction (weight zero),
* normal bundles with nonzero integer rotation weights and Chern roots,
* optional twist bundles V (real, with a spin structure, entering
  through the R_j stacks or a character table) and W (complex, entering
  through the Lambda stacks),
* spin-c line data (c1, l_c) and a declared fiber pushforward.

Models are data: nothing here computes geometry, and admissibility for
the rigidity/vanishing theorems is *checked*, never assumed.
"""

from fractions import Fraction

from .cohomology import NilAlgebra, PushForward
from .errors import ModelError
from .rings import NUMERIC


class TwistBundle:
    """A weight-isotypic bundle summand: rotation weight + Chern roots."""

    __slots__ = ("weight", "roots")

    def __init__(self, weight, roots):
        self.weight = int(weight)
        self.roots = tuple(roots)

    @property
    def rank_pairs(self):
        return len(self.roots)

    def __repr__(self):
        return "TwistBundle(weight=%d, rank=%d)" % (self.weight,
                                                    self.rank_pairs)


class FixedComponent:
    """One fixed submanifold with its equivariant decomposition data."""

    __slots__ = ("name", "tangent_roots", "normal", "v_parts", "w_parts",
                 "c1", "l_c", "push")

    def __init__(self, name, tangent_roots, normal, v_parts=(), w_parts=(),
                 c1=None, l_c=0, push=None):
        self.name = str(name)
        self.tangent_roots = tuple(tangent_roots)
        self.normal = tuple(normal)
        self.v_parts = tuple(v_parts)
        self.w_parts = tuple(w_parts)
        self.c1 = c1
        self.l_c = int(l_c)
        self.push = push

    @property
    def alg(self):
        return self.push.comp_alg

    def k_alpha(self):
        return len(self.tangent_roots)

    def normal_rank(self):
        return sum(b.rank_pairs for b in self.normal)

    def v_rank(self):
        return sum(b.rank_pairs for b in self.v_parts)

    def w_rank(self):
        return sum(b.rank_pairs for b in self.w_parts)

    def tangent_v_parts(self):
        """V = the vertical tangent bundle, as twist data.

        Used when an R_j twist is requested on a model that does not
        declare V explicitly; the normal bundles keep their weights and
        the fixed-direction roots enter with weight zero.
        """
        parts = [TwistBundle(b.weight, b.roots) for b in self.normal]
        if self.tangent_roots:
            parts.append(TwistBundle(0, self.tangent_roots))
        return tuple(parts)

    def __repr__(self):
        return "FixedComponent(%r)" % self.name


class FixedPointModel:
    """Fixed-point data of a fiberwise circle action on a fibration."""

    __slots__ = ("name", "k", "level", "base_alg", "components")

    def __init__(self, name, k, base_alg, components, level=1):
        self.name = str(name)
        self.k = int(k)
        self.level = int(level)
        self.base_alg = base_alg
        self.components = tuple(components)

    def v_half_rank(self, use_tangent=False):
        comp = self.components[0]
        parts = comp.tangent_v_parts() if use_tangent else comp.v_parts
        return sum(b.rank_pairs for b in parts)

    def w_rank(self):
        return self.components[0].w_rank() if self.components else 0

    def numeric(self):
        """The same model over complex scalars."""
        if self.base_alg.ring == NUMERIC:
            return self
        comps = []
        for c in self.components:
            push = c.push.numeric()
            alg = push.comp_alg

            def conv(p):
                from .cohomology import NilPoly
                return NilPoly(alg, {m: complex(v)
                                     for m, v in p.terms.items()},
                               prune=False)

            comps.append(FixedComponent(
                c.name,
                [conv(r) for r in c.tangent_roots],
                [TwistBundle(b.weight, [conv(r) for r in b.roots])
                 for b in c.normal],
                [TwistBundle(b.weight, [conv(r) for r in b.roots])
                 for b in c.v_parts],
                [TwistBundle(b.weight, [conv(r) for r in b.roots])
                 for b in c.w_parts],
                conv(c.c1) if c.c1 is not None else None,
                c.l_c,
                push))
        return FixedPointModel(self.name, self.k, self.base_alg.numeric(),
                               comps, self.level)

    def __repr__(self):
        return "FixedPointModel(%r, k=%d, %d components)" % (
            self.name, self.k, len(self.components))


# ---------------------------------------------------------------------------
# operator specifications
# ---------------------------------------------------------------------------

class WittenStack:
    """Dirac operator twisted by the symmetric-power tangent stack only."""

    variant = "witten"
    mode = "loop"

    def __repr__(self):
        return "WittenStack()"


class LoopDirac:
    """Loop-space Dirac operator with a positive-energy twist.

    ``twist`` selects a built-in level-1 construction ("r1", "r2", "r3",
    applied to the model's V or to the vertical tangent bundle when no V
    is declared) or ``None`` with an explicit character ``table``
    mapping weight tuples to scalar q-series.  ``anomaly`` optionally
    supplies the exact data for the q^(m_Lambda) exponent shift.
    """

    variant = "loop"
    mode = "loop"

    def __init__(self, twist=None, table=None, anomaly=None):
        if twist is not None and twist not in ("r1", "r2", "r3"):
            raise ModelError("unknown loop twist %r" % (twist,))
        if twist is None and table is None:
            raise ModelError("LoopDirac needs a built-in twist or a "
                             "character table (use WittenStack for the "
                             "untwisted stack)")
        self.twist = twist
        self.table = table
        self.anomaly = anomaly

    def __repr__(self):
        return "LoopDirac(twist=%r)" % (self.twist,)


class SpincStack:
    """spin-c Dirac twisted by Theta_q(TX|W) (+ beta variant) and R_j(V).

    ``j`` picks the R_j factor for V; ``beta = 1/N`` switches to the
    root-of-unity stack; ``A`` (an SL2(Z) matrix as ((a,b),(c,d)))
    requests the A-twisted beta operator, whose stack parameter becomes
    (c tau + d) beta and which carries the extra det(W)^(c beta) twist.
    """

    variant = "spinc"
    mode = "spinc"

    def __init__(self, j=1, beta=None, N=None, A=None):
        if j not in (1, 2, 3):
            raise ModelError("spin-c stack index j must be 1, 2 or 3")
        self.j = j
        if beta is not None:
            beta = Fraction(beta)
            if N is None:
                N = beta.denominator
            if beta != Fraction(1, N) or N <= 1:
                raise ModelError("beta must be 1/N with N > 1")
        elif N is not None:
            beta = Fraction(1, N)
            if N <= 1:
                raise ModelError("beta must be 1/N with N > 1")
        self.beta = beta
        self.N = N
        if A is not None:
            A = ((int(A[0][0]), int(A[0][1])), (int(A[1][0]), int(A[1][1])))
            a, b = A[0]
            c, d = A[1]
            if a * d - b * c != 1:
                raise ModelError("A must have determinant 1")
            if beta is None:
                raise ModelError("the A-twisted operator needs beta")
        self.A = A

    def __repr__(self):
        bits = ["j=%d" % self.j]
        if self.beta is not None:
            bits.append("beta=%s" % self.beta)
        if self.A is not None:
            bits.append("A=%r" % (self.A,))
        return "SpincStack(%s)" % ", ".join(bits)


def epsilon_A(A):
    """Parity-class selector: which theta kind appears after acting by A."""
    c, d = A[1]
    c, d = c % 2, d % 2
    if (c, d) == (0, 1):
        return 1
    if (c, d) == (1, 0):
        return 2
    if (c, d) == (1, 1):
        return 3
    raise ModelError("c and d cannot both be even in SL2(Z)")


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

class Diagnostics:
    """Collected validation findings; errors make the model unusable."""

    def __init__(self):
        self.entries = []

    def error(self, code, msg):
        self.entries.append(("error", code, msg))

    def warn(self, code, msg):
        self.entries.append(("warning", code, msg))

    @property
    def ok(self):
        return not any(lvl == "error" for lvl, _, _ in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        if not self.entries:
            return "Diagnostics(ok)"
        return "Diagnostics(%s)" % "; ".join(
            "%s:%s %s" % e for e in self.entries)


def validate_model(model, spec=None):
    """Structural checks; a clean report means every assembly formula's
    preconditions hold (nonzero rotation weights, dimension bookkeeping,
    matching ranks across components, spin-c line consistency)."""
    diag = Diagnostics()
    if not model.components:
        diag.error("empty", "model has no fixed components")
        return diag
    v_ranks = set()
    w_ranks = set()
    for comp in model.components:
        if comp.push is None:
            diag.error("push", "%s: missing pushforward" % comp.name)
            continue
        if comp.push.base_alg != model.base_alg:
            diag.error("base", "%s: pushforward base algebra differs from "
                       "the model base" % comp.name)
        total = comp.normal_rank() + comp.k_alpha()
        if total != model.k:
            diag.error("dim", "%s: sum d(m) + k_alpha = %d != k = %d"
                       % (comp.name, total, model.k))
        for b in comp.normal:
            if b.weight == 0:
                diag.error("weight0", "%s: zero rotation number on a "
                           "normal bundle (theta denominator vanishes)"
                           % comp.name)
        for b in comp.normal + comp.v_parts + comp.w_parts:
            for r in b.roots:
                if r.alg != comp.alg:
                    diag.error("alg", "%s: root outside the component "
                               "algebra" % comp.name)
        if comp.c1 is not None and comp.c1.alg != comp.alg:
            diag.error("alg", "%s: c1 outside the component algebra"
                       % comp.name)
        v_ranks.add(comp.v_rank())
        w_ranks.add(comp.w_rank())
        # spin-c line consistency: sum of W roots/weights vs (c1, l_c)
        if comp.w_parts:
            su = comp.alg.zero()
            lw = 0
            for b in comp.w_parts:
                for r in b.roots:
                    su = su + r
                lw += b.weight * b.rank_pairs
            c1 = comp.c1 if comp.c1 is not None else comp.alg.zero()
            if (su - c1).terms or lw != comp.l_c:
                diag.warn("c1w", "%s: c1(W) data does not match the "
                          "declared spin-c line (needed by the Theta_q "
                          "quotient formulas)" % comp.name)
        elif comp.c1 is not None and comp.c1.terms or comp.l_c:
            if spec is not None and spec.mode == "loop":
                diag.warn("spin", "%s: loop operators assume a spin "
                          "fiber (c1 = 0, l_c = 0)" % comp.name)
    if len(v_ranks) > 1:
        diag.error("vrank", "V rank differs across components: %s"
                   % sorted(v_ranks))
    if len(w_ranks) > 1:
        diag.error("wrank", "W rank differs across components: %s"
                   % sorted(w_ranks))
    if spec is not None and getattr(spec, "A", None) is not None:
        c = spec.A[1][0]
        if spec.N is not None and c % spec.N and c % 2:
            # L_W^(c beta) needs the N-divisibility of c1(W)
            diag.warn("lwc", "A-twist legality relies on c1(W) being "
                      "divisible by N")
    return diag
