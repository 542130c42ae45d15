import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transmute.errors import ConvergenceError, DomainError
from transmute.numeric import (
    QuadratureSpec,
    RootBracket,
    erf,
    integrate,
    normal_cdf,
    normal_pdf,
    normal_quantile,
    solve_cubic_monic,
    solve_monotone,
)

# 40-digit mpmath values
ERF_1 = 0.8427007929497148693
Q_975 = 1.959963984540054235
Q_1E300 = -37.04709629936119924
X2_PHI_PHI2 = 0.4252214825702986749  # 1/3 + 1/(2 pi sqrt 3)
MIN3_ROOT = 0.2062994740159002626  # 3z - 3z^2 + z^3 = 1/2


def bisect(f, lo, hi, tol=1e-15):
    flo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (f(mid) < 0) == (flo < 0):
            lo, flo = mid, f(mid)
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestErf:
    def test_examples(self):
        assert erf(0.0) == 0.0
        assert abs(erf(6.0) - 1.0) <= 1e-15
        assert abs(erf(1.0) - ERF_1) <= 1e-15

    def test_odd_and_monotone_on_grid(self):
        x = np.linspace(-6, 6, 10_001)
        y = erf(x)
        assert np.array_equal(erf(-x), -y)
        assert np.all(np.diff(y) >= 0)
        assert np.all(np.abs(y) <= 1)

    def test_cdf_matches_erf_identity(self):
        x = np.linspace(-5, 5, 101)
        np.testing.assert_allclose(normal_cdf(x), 0.5 * (1 + erf(x / math.sqrt(2))), atol=1e-15)


class TestNormalQuantile:
    def test_examples(self):
        assert normal_quantile(0.5) == 0.0
        q = normal_quantile(0.975)
        assert abs(q - Q_975) <= 1e-14
        assert abs(normal_cdf(q) - 0.975) <= 1e-14

    def test_deep_tail(self):
        q = normal_quantile(1e-300)
        assert math.isfinite(q) and q < 0
        assert abs(q - Q_1E300) <= 1e-12
        assert normal_cdf(q) / 1e-300 == pytest.approx(1.0, rel=1e-10)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, math.nan])
    def test_domain(self, p):
        with pytest.raises(DomainError):
            normal_quantile(p)

    def test_roundtrip_and_antisymmetry(self):
        p = np.concatenate([np.logspace(-12, -1, 200), np.linspace(0.1, 0.9, 200)])
        p = np.concatenate([p, 1 - p])
        q = normal_quantile(p)
        assert np.max(np.abs(normal_cdf(q) - p)) <= 1e-12
        lower = p[p < 0.5]
        lower = 1.0 - (1.0 - lower)  # values whose complement is exact
        assert np.max(np.abs(normal_quantile(1 - lower) + normal_quantile(lower))) <= 1e-14

    @given(st.floats(1e-12, 1 - 1e-12), st.floats(1e-12, 1 - 1e-12))
    def test_strictly_increasing(self, a, b):
        if a < b:
            assert normal_quantile(a) < normal_quantile(b)


class TestIntegrate:
    def test_examples(self):
        assert integrate(lambda x: 1.0, 0.0, 1.0) == pytest.approx(1.0, abs=1e-15)
        assert abs(integrate(normal_pdf, -math.inf, math.inf) - 1.0) <= 1e-12
        val = integrate(lambda x: x * x * normal_pdf(x) * normal_cdf(x) ** 2, -math.inf, math.inf)
        assert abs(val - X2_PHI_PHI2) <= 1e-12

    @pytest.mark.parametrize("k,expected", [(1, 0.0), (2, 1.0), (4, 3.0)])
    def test_normal_moments(self, k, expected):
        val = integrate(lambda x: x**k * normal_pdf(x), -math.inf, math.inf, points=[0.0])
        assert abs(val - expected) <= 1e-10

    def test_exponential_weight(self):
        assert integrate(lambda x: x * math.exp(-x), 0.0, math.inf) == pytest.approx(1.0, abs=1e-12)

    def test_reversed_and_empty(self):
        assert integrate(lambda x: x, 1.0, 0.0) == pytest.approx(-0.5)
        assert integrate(lambda x: x, 2.0, 2.0) == 0.0

    def test_non_convergence(self):
        spec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=1)
        with pytest.raises(ConvergenceError):
            integrate(lambda x: math.sin(1.0 / x), 1e-4, 1.0, spec)

    @pytest.mark.parametrize(
        "kw", [dict(abs_tol=0.0), dict(rel_tol=-1.0), dict(max_subdivisions=0)]
    )
    def test_spec_invariants(self, kw):
        with pytest.raises(ValueError):
            QuadratureSpec(**kw)


class TestSolveMonotone:
    def test_linear(self):
        f = lambda z: z - 0.5
        assert solve_monotone(f, RootBracket.around(f, 0, 1)) == pytest.approx(0.5, abs=1e-12)

    def test_max_of_two(self):
        f = lambda z: z * z - 0.25
        z = solve_monotone(f, RootBracket.around(f, 0, 1), fprime=lambda z: 2 * z)
        assert z == pytest.approx(0.5, abs=1e-12)

    def test_min_of_three_against_bisection(self):
        f = lambda z: 3 * z - 3 * z * z + z**3 - 0.5
        oracle = bisect(f, 0.0, 1.0)
        assert abs(oracle - MIN3_ROOT) <= 1e-15
        z = solve_monotone(f, RootBracket.around(f, 0, 1), tol=1e-14)
        assert abs(f(z)) <= 1e-12
        assert abs(z - oracle) <= 1e-12

    def test_decreasing_function(self):
        f = lambda z: 0.3 - z
        assert solve_monotone(f, RootBracket.around(f, 0, 1)) == pytest.approx(0.3, abs=1e-12)

    def test_never_leaves_bracket(self):
        seen = []

        def f(z):
            seen.append(z)
            return math.atan(z - 0.9)

        solve_monotone(f, RootBracket.around(f, 0.0, 1.0), fprime=lambda z: 1 / (1 + (z - 0.9) ** 2))
        assert all(0.0 <= z <= 1.0 for z in seen)

    def test_endpoint_root(self):
        f = lambda z: z
        assert solve_monotone(f, RootBracket.around(f, 0.0, 1.0)) == 0.0

    @pytest.mark.parametrize("lo,hi", [(1.0, 0.0), (0.6, 1.0)])
    def test_bad_bracket(self, lo, hi):
        f = lambda z: z - 0.5
        with pytest.raises(ValueError):
            RootBracket.around(f, lo, hi)


class TestCubic:
    def test_triple_root(self):
        assert solve_cubic_monic(0, 0, 0) == [0.0]

    def test_factorised(self):
        np.testing.assert_allclose(solve_cubic_monic(0, -1, 0), [-1, 0, 1], atol=1e-15)

    def test_min_of_three(self):
        roots = solve_cubic_monic(-3.0, 3.0, -0.5)
        inside = [r for r in roots if 0 <= r <= 1]
        assert len(inside) == 1
        f = lambda z: 3 * z - 3 * z * z + z**3 - 0.5
        oracle = solve_monotone(f, RootBracket.around(f, 0, 1), tol=1e-15)
        assert inside[0] == pytest.approx(oracle, abs=1e-12)

    def test_double_root(self):
        # (z - 1)^2 (z + 2)
        np.testing.assert_allclose(solve_cubic_monic(0.0, -3.0, 2.0), [-2.0, 1.0], atol=1e-7)

    def test_random_residuals(self):
        rng = np.random.default_rng(20070323)
        worst = 0.0
        for c2, c1, c0 in rng.uniform(-10, 10, size=(100_000, 3)):
            roots = solve_cubic_monic(c2, c1, c0)
            assert roots == sorted(roots) and roots
            for z in roots:
                worst = max(worst, abs(((z + c2) * z + c1) * z + c0))
        assert worst <= 1e-10

    @settings(max_examples=300)
    @given(st.lists(st.floats(-5, 5), min_size=3, max_size=3))
    def test_recovers_known_roots(self, r):
        a, b, c = r
        c2 = -(a + b + c)
        c1 = a * b + b * c + a * c
        c0 = -a * b * c
        roots = solve_cubic_monic(c2, c1, c0)
        for z in roots:
            assert abs(((z + c2) * z + c1) * z + c0) <= 1e-10
        # every true root is near some returned root
        for t in r:
            assert min(abs(t - z) for z in roots) <= 1e-4
