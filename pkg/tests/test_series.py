"""q-series arithmetic: grids, truncation, products, inversion."""

import random
from fractions import Fraction

import pytest

from ellgenus.errors import SeriesError, TruncationError
from ellgenus.laurent import LaurentZ
from ellgenus.series import QSeries, binomial_factor, product_of_factors
from ellgenus.theta import euler_c_series

F = Fraction


def qs(d, step=1, trunc=None):
    return QSeries(step, {k: F(v) for k, v in d.items()}, trunc)


def test_add_cancellation():
    a = qs({0: 1, 1: 1})
    b = qs({0: -1, 2: 1})
    assert (a + b) == qs({1: 1, 2: 1})


def test_additive_identity():
    a = qs({0: 3, 2: -1}, trunc=5)
    zero = QSeries(1, {})
    assert (a + zero) == a


def test_grid_unification_eighth_plus_half():
    a = QSeries(F(1, 8), {1: F(1)})          # q^(1/8)
    b = QSeries(F(1, 2), {1: F(1)})          # q^(1/2)
    s = a + b
    assert s.step == F(1, 8)
    assert s.coeffs == {1: F(1), 4: F(1)}


def test_mul_geometric_inverse():
    one_minus_q = qs({0: 1, 1: -1})
    geo = qs({k: 1 for k in range(10)}, trunc=10)
    assert (one_minus_q * geo).coeffs == {0: F(1)}


def test_exponent_addition():
    a = QSeries(F(1, 8), {1: F(1)})
    p = a * a
    assert p.step == F(1, 8)
    assert p.coeffs == {2: F(1)}          # q^(1/4)


def _euler_by_subsets(nmax):
    """Brute-force oracle: prod (1-q^n) via signed distinct partitions."""
    coeffs = {0: 1}
    for n in range(1, nmax + 1):
        new = dict(coeffs)
        for e, c in coeffs.items():
            if e + n <= nmax:
                new[e + n] = new.get(e + n, 0) - c
        coeffs = new
    return coeffs


PENTAGONAL_12 = [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]


def test_euler_product_pentagonal():
    c = euler_c_series(13, F(1))
    oracle = _euler_by_subsets(12)
    for n in range(13):
        assert c.coefficient(n) == oracle.get(n, 0)
        assert c.coefficient(n) == PENTAGONAL_12[n]


def test_euler_product_empty():
    out = product_of_factors([], 5, F(1))
    assert out.coefficient(0) == 1
    assert all(out.coefficient(n) == 0 for n in range(1, 5))


def test_euler_factor_rejects_nonpositive_exponent():
    with pytest.raises(SeriesError):
        binomial_factor(0, F(1), 1, 5, F(1))
    with pytest.raises(SeriesError):
        binomial_factor(F(-1, 2), F(1), 1, 5, F(1))


def test_jacobi_triple_product_with_z():
    """prod (1+q^(n-1/2) z)(1+q^(n-1/2)/z) prod(1-q^n) at z=1 equals
    the direct lattice sum over q^(n^2/2), checked to 20 half-steps."""
    one = LaurentZ.const(F(1))
    zp = LaurentZ.monomial(F(1), 2)
    zm = LaurentZ.monomial(F(1), -2)
    factors = []
    for n in range(1, 22):
        e = F(2 * n - 1, 2)
        factors.append((e, zp, 1))
        factors.append((e, zm, 1))
        factors.append((n, -one, 1))
    prod = product_of_factors(factors, F(21, 2), one)
    # direct summation oracle
    expected = {}
    n = 0
    while F(n * n, 2) < F(21, 2):
        expected[F(n * n, 2)] = expected.get(F(n * n, 2), 0) + (2 if n else 1)
        n += 1
    got = {}
    for e, c in prod.known_items():
        val = c.eval_w(1)
        if val:
            got[e] = val
    assert got == {e: F(v) for e, v in expected.items()}


def test_invert_one_minus_q():
    inv = qs({0: 1, 1: -1}).invert(trunc=8)
    assert all(inv.coefficient(n) == 1 for n in range(8))


def test_invert_monomial():
    a = qs({3: 1})
    inv = a.invert(trunc=2)
    assert inv.coefficient(-3) == 1


def test_invert_theta_denominator_self_consistency():
    """The sphere's theta denominator at a fixed circle value, inverted
    and multiplied back, is exactly 1 in rational arithmetic."""
    from ellgenus.cohomology import NilAlgebra
    from ellgenus.theta import ThetaArg, theta_hat_qexp
    alg = NilAlgebra((), 0)
    den = theta_hat_qexp("theta", ThetaArg(1, alg.zero(), 0), 10, alg)
    den_at = den.map_coeffs(lambda c: c.eval_w(F(2)).constant_term())
    prod = den_at * den_at.invert()
    assert prod.coefficient(0) == 1
    for e, c in prod.known_items():
        assert c == (1 if e == 0 else 0)


def _random_series(rng, step=1):
    keys = rng.sample(range(-2, 7), rng.randint(1, 4))
    return QSeries(step, {k: F(rng.randint(-5, 5), rng.randint(1, 4))
                          for k in keys}, trunc=9)


def test_ring_laws_sampled():
    rng = random.Random(7)
    for _ in range(25):
        a, b, c = (_random_series(rng) for _ in range(3))
        assert ((a + b) + c) == (a + (b + c))
        assert (a + b) == (b + a)
        lhs = (a * (b + c)).truncate(5)
        rhs = (a * b + a * c).truncate(5)
        assert lhs == rhs
        assert (a * b).truncate(5) == (b * a).truncate(5)


def test_refine_commutes_with_multiply():
    rng = random.Random(3)
    for _ in range(10):
        a = _random_series(rng, step=F(1, 2))
        b = _random_series(rng, step=F(1, 2))
        fine = (a.refine(F(1, 24)) * b.refine(F(1, 24)))
        coarse = (a * b).refine(F(1, 24))
        assert fine == coarse


def test_truncation_monotonicity():
    from ellgenus.theta import euler_c_series
    small = euler_c_series(6, F(1))
    large = euler_c_series(12, F(1))
    for n in range(6):
        assert small.coefficient(n) == large.coefficient(n)


def test_truncation_error_not_silent_zero():
    a = qs({0: 1}, trunc=3)
    with pytest.raises(TruncationError):
        a.coefficient(3)
    with pytest.raises(TruncationError):
        a.coefficient(7)
    assert a.coefficient(2) == 0


def test_mul_trunc_accounts_for_lowest_exponents():
    a = qs({-2: 1}, trunc=3)        # known through q^2
    b = qs({1: 1})                  # exact monomial
    p = a * b
    assert p.trunc == 4             # (trunc 3) + (lowest 1)
    assert p.coefficient(-1) == 1


def test_step_denominator_must_divide_24():
    with pytest.raises(SeriesError):
        QSeries(F(1, 5), {0: F(1)})


def test_render_canonical_form():
    a = QSeries(F(1, 2), {0: F(3), 3: F(-1, 2)}, trunc=8)
    assert a.render() == "3*q^(0) + -1/2*q^(3/2) + O(q^(4))"
