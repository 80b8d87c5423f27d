"""Built-in fixed-point models, shipped as data.

Derivation notes
----------------

``s2``: the rotation action on the two-sphere, two isolated fixed
points.  Fiber dimension 2 (k = 1); the normal line at the north pole
has rotation weight +1, at the south pole -1; Chern roots vanish on a
point.  Twist variants: ``s2-sig`` takes V = TX (the level-1 signature
stack data); ``s2-w`` takes W = the holomorphic tangent line, whose
weight is +1/-1, forcing spin-c line data l_c = +1/-1 (the canonical
spin-c structure of the complex structure); ``s2-o4`` takes a W line of
weight +2/-2 with l_c = +2/-2, giving rigidity anomaly n = 3, the
built-in example of a genuinely non-rigid but Jacobi-covariant
character.  ``s2-broken`` perturbs the south weight to -2: dimension
data still closes, but the anomaly is inconsistent and rigidity fails
(negative control).

``cp3``: projective 3-space with the linear circle action of weights
(0, 1, 2, 3), four isolated fixed points; at the i-th point the tangent
weights are lambda_j - lambda_i for j != i (k = 3, spin since c1 is
even).  ``cp3-sig`` adds V = TX (so p1(V) = p1(TX) equivariantly and
the level-1 anomaly vanishes: the classical rigidity situation);
``cp3-w`` adds W = the holomorphic tangent bundle with l_c = sum_j
(lambda_j - lambda_i).

``hirzebruch``: the fiberwise action on P(O + O(-1)) -> CP1.  The two
fixed components are sections (fiber_dim 0), identified with the base
B = CP1 with H*(B) = Q[h]/(h^2).  The vertical normal line of the zero
section is O(-1) (root -h, weight +1); of the infinity section O(+1)
(root +h, weight -1).  Pushforward = identity on sections.
``hirzebruch-sig`` takes V = the vertical tangent line (anomaly 0: the
family rigidity example, including its degree-2 base component);
``hirzebruch-w2`` declares a W line of weight 2 with root -h/2 and
matching spin-c data (anomaly n = 3 with *consistent* cohomological
identities: h/2-integrality is a property of the data, not of a
geometric bundle), the family example with a nonzero degree-2
component for the quasi-periodicity and weight checks.
``hirzebruch-broken`` perturbs the infinity-section weight (negative
control for the family rigidity test).

``cp1-o1``: CP1 with the Dolbeault spin-c data of the line O(1): W has
weights (0, -1) and l_c = (+1, -1).  Only meaningful for the oracle
path (its W data deliberately does not match the spin-c line), where it
reproduces the holomorphic Lefschetz numbers of O(1): the character
1 + z^-1, of rank 2 = dim H0(CP1, O(1)).
"""

from fractions import Fraction

from .cohomology import NilAlgebra, PushForward
from .errors import ModelError
from .model import FixedComponent, FixedPointModel, TwistBundle


def _point_alg():
    return NilAlgebra((), 0)


def _isolated(name, alg, normal_weights, v=None, w=None, c1=None, l_c=0):
    push = PushForward.identity(alg)
    zero = alg.zero()
    return FixedComponent(
        name,
        tangent_roots=(),
        normal=[TwistBundle(m, [zero]) for m in normal_weights],
        v_parts=[TwistBundle(m, [zero]) for m in (v or ())],
        w_parts=[TwistBundle(m, [zero]) for m in (w or ())],
        c1=alg.zero() if c1 is None else c1,
        l_c=l_c,
        push=push)


def s2():
    alg = _point_alg()
    return FixedPointModel("s2", 1, alg, [
        _isolated("north", alg, [1]),
        _isolated("south", alg, [-1]),
    ])


def s2_sig():
    alg = _point_alg()
    return FixedPointModel("s2-sig", 1, alg, [
        _isolated("north", alg, [1], v=[1]),
        _isolated("south", alg, [-1], v=[-1]),
    ])


def s2_w():
    alg = _point_alg()
    return FixedPointModel("s2-w", 1, alg, [
        _isolated("north", alg, [1], w=[1], l_c=1),
        _isolated("south", alg, [-1], w=[-1], l_c=-1),
    ])


def s2_o4():
    alg = _point_alg()
    return FixedPointModel("s2-o4", 1, alg, [
        _isolated("north", alg, [1], w=[2], l_c=2),
        _isolated("south", alg, [-1], w=[-2], l_c=-2),
    ])


def s2_broken():
    alg = _point_alg()
    return FixedPointModel("s2-broken", 1, alg, [
        _isolated("north", alg, [1]),
        _isolated("south", alg, [-2]),
    ])


def s2_vw():
    """V = TX and a weight-2 W line on the sphere: anomaly n = 4.

    The V factor makes the three stack indices genuinely different
    (theta_1/theta_2/theta_3 numerators), so the parity-class selection
    in the modular law is exercised non-vacuously; the W factor breaks
    the antipodal cancellation, so the character is nonzero.
    """
    alg = _point_alg()
    return FixedPointModel("s2-vw", 1, alg, [
        _isolated("north", alg, [1], v=[1], w=[2], l_c=2),
        _isolated("south", alg, [-1], v=[-1], w=[-2], l_c=-2),
    ])


def cp2_w(weights=(0, 1, 3)):
    """CP2 (spin-c, not spin) with W = the holomorphic tangent bundle.

    Tangent weights at the i-th fixed point are lambda_j - lambda_i, and
    the fixed set has no antipodal symmetry, so the root-of-unity
    characters are genuinely nonzero.  c1(W) = c1(TX) = 3h is divisible
    by N = 3, the anomaly n vanishes, and the beta = 1/3 stack is the
    built-in rigid example over (6Z)^2 and Gamma_1(6).
    """
    alg = _point_alg()
    comps = []
    for i, li in enumerate(weights):
        ms = [lj - li for j, lj in enumerate(weights) if j != i]
        comps.append(_isolated("p%d" % i, alg, ms, w=ms, l_c=sum(ms)))
    return FixedPointModel("cp2-w", 2, alg, comps)


def cp3(weights=(0, 1, 2, 3)):
    alg = _point_alg()
    comps = []
    for i, li in enumerate(weights):
        ms = [lj - li for j, lj in enumerate(weights) if j != i]
        comps.append(_isolated("p%d" % i, alg, ms))
    return FixedPointModel("cp3", 3, alg, comps)


def cp3_sig(weights=(0, 1, 2, 3)):
    alg = _point_alg()
    comps = []
    for i, li in enumerate(weights):
        ms = [lj - li for j, lj in enumerate(weights) if j != i]
        comps.append(_isolated("p%d" % i, alg, ms, v=ms))
    return FixedPointModel("cp3-sig", 3, alg, comps)


def cp3_w(weights=(0, 1, 2, 3)):
    alg = _point_alg()
    comps = []
    for i, li in enumerate(weights):
        ms = [lj - li for j, lj in enumerate(weights) if j != i]
        comps.append(_isolated("p%d" % i, alg, ms, w=ms, l_c=sum(ms)))
    return FixedPointModel("cp3-w", 3, alg, comps)


def _cp1_base():
    return NilAlgebra((("h", 2),), 2)


def _section(name, base, normal, v=None, w=None, c1=None, l_c=0):
    push = PushForward.identity(base)
    return FixedComponent(
        name, tangent_roots=(), normal=normal,
        v_parts=v or (), w_parts=w or (),
        c1=base.zero() if c1 is None else c1, l_c=l_c, push=push)


def hirzebruch():
    base = _cp1_base()
    h = base.var("h")
    return FixedPointModel("hirzebruch", 1, base, [
        _section("zero", base, [TwistBundle(1, [-h])]),
        _section("infinity", base, [TwistBundle(-1, [h])]),
    ])


def hirzebruch_sig():
    base = _cp1_base()
    h = base.var("h")
    return FixedPointModel("hirzebruch-sig", 1, base, [
        _section("zero", base, [TwistBundle(1, [-h])],
                 v=[TwistBundle(1, [-h])]),
        _section("infinity", base, [TwistBundle(-1, [h])],
                 v=[TwistBundle(-1, [h])]),
    ])


def hirzebruch_w2():
    base = _cp1_base()
    h = base.var("h")
    half = Fraction(1, 2)
    return FixedPointModel("hirzebruch-w2", 1, base, [
        _section("zero", base, [TwistBundle(1, [-h])],
                 w=[TwistBundle(2, [h.scale(-half)])],
                 c1=h.scale(-half), l_c=2),
        _section("infinity", base, [TwistBundle(-1, [h])],
                 w=[TwistBundle(-2, [h.scale(half)])],
                 c1=h.scale(half), l_c=-2),
    ])


def hirzebruch_broken():
    base = _cp1_base()
    h = base.var("h")
    return FixedPointModel("hirzebruch-broken", 1, base, [
        _section("zero", base, [TwistBundle(1, [-h])]),
        _section("infinity", base, [TwistBundle(-2, [h])]),
    ])


def cp1_o1():
    alg = _point_alg()
    return FixedPointModel("cp1-o1", 1, alg, [
        _isolated("north", alg, [1], w=[0], l_c=1),
        _isolated("south", alg, [-1], w=[-1], l_c=-1),
    ])


BUILTIN_MODELS = {
    "s2": s2,
    "s2-sig": s2_sig,
    "s2-w": s2_w,
    "s2-o4": s2_o4,
    "s2-vw": s2_vw,
    "s2-broken": s2_broken,
    "cp2-w": cp2_w,
    "cp3": cp3,
    "cp3-sig": cp3_sig,
    "cp3-w": cp3_w,
    "hirzebruch": hirzebruch,
    "hirzebruch-sig": hirzebruch_sig,
    "hirzebruch-w2": hirzebruch_w2,
    "hirzebruch-broken": hirzebruch_broken,
    "cp1-o1": cp1_o1,
}


def builtin(name):
    try:
        return BUILTIN_MODELS[name]()
    except KeyError:
        raise ModelError("unknown builtin model %r (have: %s)"
                         % (name, ", ".join(sorted(BUILTIN_MODELS))))
