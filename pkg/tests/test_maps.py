import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from scaledbary.maps import (LogMap, PolyMap, PowerPlain, PowerScaled, SinhMap, SymmetricPower,
                             TanMap, mapped_nodes, symmetric_power_nodes)
from scaledbary.nodes import chebyshev_points

ALL_MAPS = [
    PowerScaled(T=1.0, s=2.0, alpha=1.0),
    PowerScaled(T=3.0, s=5.0, alpha=0.5),
    PowerPlain(T=1.0, s=20.0),
    SymmetricPower(T=2.0, s=3.0),
    LogMap(x0=1e-10, T=1.0),
    PolyMap(a=0.01, p=2),
    TanMap(eps=1e-3),
    SinhMap(eps=1e-3),
]


class TestEndpoints:
    def test_power_images(self):
        m = PowerScaled(T=1, s=2, alpha=1)
        assert m.apply(1.0) == 1.0 and m.apply(-1.0) == 0.0

    def test_affine_case(self):
        assert PowerScaled(T=1, s=1, alpha=1).apply(0.0) == 0.5

    def test_conformal_normalization(self):
        assert TanMap(eps=0.5).apply(1.0) == 1.0
        assert SinhMap(eps=0.1).apply(0.0) == 0.0
        assert PolyMap(a=2.0, p=3).apply(-1.0) == -1.0

    def test_log_theta_midpoint(self):
        m = LogMap(x0=1e-5, T=1.0)
        assert_allclose(m.apply_theta(0.0), 10**-2.5, rtol=1e-14)

    @pytest.mark.parametrize("m", ALL_MAPS, ids=lambda m: m.name)
    def test_exact_clamp(self, m):
        lo, hi = m.reference_interval
        a, b = m.image_interval
        assert m.apply(lo) == a and m.apply(hi) == b

    @pytest.mark.parametrize("m", ALL_MAPS, ids=lambda m: m.name)
    def test_outside_reference_interval(self, m):
        lo, hi = m.reference_interval
        with pytest.raises(ValueError):
            m.apply(hi + 1e-3)
        with pytest.raises(ValueError):
            m.apply(lo - 1e-3)


class TestMonotonicity:
    @pytest.mark.parametrize("m", ALL_MAPS, ids=lambda m: m.name)
    def test_random_pairs(self, m):
        rng = np.random.default_rng(7)
        lo, hi = m.reference_interval
        y = np.sort(rng.uniform(lo, hi, size=(1000, 2)), axis=1)
        y = y[y[:, 0] < y[:, 1]]
        g = m.apply(y)
        # clustering maps flush tiny differences; require strict order where
        # the images are representable and never a reversal
        assert np.all(g[:, 0] <= g[:, 1])
        assert np.mean(g[:, 0] < g[:, 1]) > 0.9

    def test_large_exponent_mapped_nodes(self):
        ns = mapped_nodes(PowerScaled(T=1, s=20, alpha=1), chebyshev_points(100))
        assert np.all(np.diff(ns.points) > 0)


class TestMappedNodes:
    def test_squares(self):
        ns = mapped_nodes(PowerScaled(T=1, s=2, alpha=1), chebyshev_points(2))
        assert_allclose(ns.points, [0, 0.25, 1], atol=1e-16)

    def test_identity_exponent_is_affine(self):
        base = chebyshev_points(9)
        ns = mapped_nodes(PowerScaled(T=4, s=1, alpha=1), base)
        assert_allclose(ns.points, 2 * (base.points + 1), atol=4e-15)

    def test_rejects_base_outside(self):
        with pytest.raises(ValueError):
            mapped_nodes(PowerPlain(T=1, s=2), chebyshev_points(3, (0, 2)))


class TestExponentForms:
    def test_scaled_and_plain_agree(self):
        y = np.linspace(-1, 1, 1001)
        a = PowerScaled(T=2.5, s=3, alpha=0.5).apply(y)
        b = PowerPlain(T=2.5, s=6).apply(y)
        assert np.all(np.abs(a - b) <= 2 * np.spacing(np.maximum(np.abs(a), np.abs(b))))

    def test_real_exponent_allowed(self):
        assert PowerPlain(T=1, s=1.5).exponent == 1.5

    @pytest.mark.parametrize("kw", [dict(s=0.5), dict(alpha=0.0), dict(alpha=1.5), dict(T=0)])
    def test_invalid_parameters(self, kw):
        with pytest.raises(ValueError):
            PowerScaled(**{**dict(T=1, s=2, alpha=1), **kw})

    def test_invalid_conformal(self):
        for make in (lambda: PolyMap(a=0), lambda: PolyMap(p=1.5), lambda: TanMap(eps=0),
                     lambda: SinhMap(eps=-1), lambda: LogMap(x0=1, T=1)):
            with pytest.raises(ValueError):
                make()


class TestInverse:
    @pytest.mark.parametrize("m", ALL_MAPS, ids=lambda m: m.name)
    def test_round_trip(self, m):
        lo, hi = m.reference_interval
        y = np.linspace(lo, hi, 41)[1:-1]
        assert_allclose(m.inverse(m.apply(y)), y, atol=1e-9 * (hi - lo))


class TestStableDifference:
    @pytest.mark.parametrize("m", [PowerPlain(T=1, s=10), LogMap(1e-8, 1), TanMap(0.01),
                                   SinhMap(0.01), PolyMap(0.5, 2)], ids=lambda m: m.name)
    def test_matches_direct_difference(self, m):
        lo, hi = m.reference_interval
        y = np.linspace(lo, hi, 17)[1:-1]
        w = y - 0.01 * (hi - lo)
        assert_allclose(m.difference(y, w, y - w), m.apply(y) - m.apply(w), rtol=1e-10)

    def test_tiny_offset_relative_accuracy(self):
        # g(y) - g(y - d) ~ g'(y) d for d far below the spacing of y
        m = PowerPlain(T=1, s=10)
        y, d = 0.3, 1e-30
        slope = 10 * ((y + 1) / 2) ** 9 / 2
        assert_allclose(m.difference(y, y - d, d), slope * d, rtol=1e-12)


class TestSymmetricPowerNodes:
    def test_count(self):
        nodes, w = symmetric_power_nodes(20, 1.0, 2.0)
        assert len(nodes) == 40 and w.size == 40

    def test_antisymmetric(self):
        x = symmetric_power_nodes(15, 1.0, 3.0)[0].points
        assert_array_equal(x, -x[::-1])

    def test_origin_excluded(self):
        x = symmetric_power_nodes(25, 1.0, 10.0)[0].points
        assert not np.any(x == 0)

    def test_weight_pattern(self):
        _, w = symmetric_power_nodes(3, 1.0, 2.0)
        assert_array_equal(w, [-0.5, 1, -1, 1, -1, 0.5])

    def test_node_values(self):
        x = symmetric_power_nodes(2, 2.0, 2.0)[0].points
        c = 0.5 * (1 - math.cos(math.pi / 2))
        assert_allclose(x, [-2, -2 * c**2, 2 * c**2, 2], rtol=1e-15)
