import cmath
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from scaledbary.errors import AccuracyLossError
from scaledbary.experiments import ConvergenceRecord
from scaledbary.maps import LogMap, PowerPlain, PowerScaled
from scaledbary.potential import (ALGEBRAIC, FLOOR, ROOT_EXPONENTIAL, PotentialContext,
                                  equilibrium_integral, fit_convergence,
                                  observed_prototype_log_rate, potential_U_field,
                                  potential_U_node, potential_U_split, potential_V,
                                  predicted_prototype_log_rate, prototype_error, rate_level_R,
                                  to_native, to_unit)

LOG2 = math.log(2)
IDENTITY = PowerScaled(T=2.0, s=1.0, alpha=1.0)


def arcsine_potential(z):
    """int_{-1}^{1} log|z - w| dw / (pi sqrt(1 - w^2)) for z off [-1, 1]."""
    z = complex(z)
    root = cmath.sqrt(z - 1) * cmath.sqrt(z + 1)
    return math.log(abs(z + root)) - LOG2


@pytest.fixture(scope="module")
def full():
    return PotentialContext(PowerPlain(T=1.0, s=2.0))


class TestNodePotential:
    @pytest.mark.parametrize("y", [-1.0, 1.0])
    def test_endpoints(self, full, y):
        assert abs(potential_U_node(full, y) + LOG2) <= 1e-10

    def test_origin(self, full):
        assert abs(potential_U_node(full, 0.0) + LOG2 / 2) <= 1e-10

    def test_symmetry(self, full):
        rng = np.random.default_rng(11)
        for y in rng.uniform(-1, 1, 20):
            assert abs(potential_U_node(full, y) - potential_U_node(full, -y)) <= 1e-10

    def test_equilibrium_identity(self, full):
        ys = np.cos(np.linspace(0, math.pi, 50)) * (1 - 1e-300)
        ys = np.concatenate([ys, [1 - 1e-14, -1 + 1e-12, 1e-300]])
        for y in ys:
            assert abs(equilibrium_integral(full, y) + LOG2) <= 1e-9

    def test_outside_interval(self):
        ctx = PotentialContext(IDENTITY, sigma=0.0)
        with pytest.raises(ValueError):
            potential_U_node(ctx, -0.5)


class TestFieldPotential:
    @pytest.mark.parametrize("z", [1.5, -3.0, 2j, 0.3 + 0.01j, 100.0])
    def test_identity_map_closed_form(self, z):
        assert abs(potential_U_field(PotentialContext(IDENTITY), z) - arcsine_potential(z)) <= 1e-10

    def test_far_field(self):
        u = potential_U_field(PotentialContext(IDENTITY), 100.0)
        assert abs(u - math.log(100.0)) <= 0.01 * math.log(100.0)

    def test_on_interval_matches_node_functionals(self):
        ctx = PotentialContext(IDENTITY)
        for y in (-0.7, 0.0, 0.4, 0.99):
            assert abs(potential_U_field(ctx, y) - equilibrium_integral(ctx, y)) <= 1e-12
            assert abs(potential_U_split(ctx, y) - potential_U_node(ctx, y)) <= 1e-12

    @pytest.mark.parametrize("m", [PowerPlain(T=1, s=2), PowerPlain(T=1, s=10), LogMap(1e-10, 1)],
                             ids=lambda m: m.name)
    def test_finite(self, m):
        ctx = PotentialContext(m)
        for z in (-0.9, 0.2, 1.0, 1.3, -1.2, 0.5j):
            assert math.isfinite(potential_U_field(ctx, z))

    def test_scale_shift(self):
        # doubling T adds log 2 to every field potential
        a = potential_U_field(PotentialContext(PowerPlain(T=1, s=3)), 0.25)
        b = potential_U_field(PotentialContext(PowerPlain(T=2, s=3)), 0.25)
        assert abs(b - a - LOG2) <= 1e-11


class TestResolution:
    @pytest.mark.parametrize("m,sigma", [(PowerPlain(T=1, s=2), -1.0), (PowerPlain(T=1, s=10), -0.5),
                                         (LogMap(1e-10, 1), -1.0)], ids=["s2", "s10", "log"])
    def test_refinement_stable(self, m, sigma):
        ctx = PotentialContext(m, sigma=sigma)
        fine = ctx.refined()
        for y in (sigma, 0.3 * sigma + 0.1, 0.9):
            assert abs(potential_U_node(ctx, y) - potential_U_node(fine, y)) < 1e-9
            assert abs(potential_U_split(ctx, y) - potential_U_split(fine, y)) < 1e-9
        for z in (1.5, -1.5, 0.2j):
            assert abs(potential_U_field(ctx, z) - potential_U_field(fine, z)) < 1e-9

    def test_verify_detects_coarse_rule(self):
        ctx = PotentialContext(PowerPlain(T=1, s=2), depth=1, order=2, verify=True, tol=1e-12)
        with pytest.raises(AccuracyLossError):
            potential_U_node(ctx, 0.3)

    def test_verify_passes_default(self):
        ctx = PotentialContext(PowerPlain(T=1, s=2), verify=True)
        assert abs(potential_U_node(ctx, 1.0) + LOG2) <= 1e-10

    @pytest.mark.parametrize("kw", [dict(sigma=1.0), dict(sigma=-1.5), dict(ratio=1.0), dict(order=1)])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            PotentialContext(IDENTITY, **kw)


class TestCoordinates:
    def test_round_trip(self):
        m = LogMap(1e-10, 1.0)
        u = np.linspace(-1, 1, 11)
        assert_allclose(to_unit(m, to_native(m, u)), u, atol=1e-15)

    def test_from_delta(self):
        m = PowerPlain(T=1.0, s=2.0)
        ctx = PotentialContext.from_delta(m, 0.25)
        # g(y) = ((y + 1)/2)**2 = 0.25 at y = 0
        assert abs(ctx.sigma) <= 1e-15


class TestRateLevel:
    def test_off_interval_at_least_one(self, full):
        for z in (1.0001, 1.5, -2.0, 0.3 + 1e-3j, 0.3 + 1j):
            R = rate_level_R(full, z)
            assert math.isfinite(R) and R >= 1.0

    def test_approach_from_above(self, full):
        vals = [rate_level_R(full, 0.3 + 1j * h) for h in (1e-1, 1e-3, 1e-6)]
        assert all(v >= 1.0 for v in vals)
        assert max(vals) - min(vals) <= 1e-12 * max(vals)

    def test_ordering_follows_potential(self, full):
        z1, z2 = 2.0, 0.5j
        v1, v2 = potential_V(full, z1), potential_V(full, z2)
        r1, r2 = rate_level_R(full, z1), rate_level_R(full, z2)
        assert (v1 - v2) * (r1 - r2) >= 0

    def test_on_interval_rejected(self, full):
        with pytest.raises(ValueError):
            rate_level_R(full, 0.2)

    def test_prediction_is_negative(self, full):
        assert predicted_prototype_log_rate(full, -2.0) < 0


class TestPrototypeError:
    def test_matches_double_precision(self):
        from scaledbary.barycentric import build_interpolant
        from scaledbary.maps import mapped_nodes
        from scaledbary.nodes import chebyshev_points, chebyshev_weights

        m, N, z = PowerPlain(T=1, s=2), 12, -0.3
        xs = np.linspace(0.013, 0.97, 25)
        nodes = mapped_nodes(m, chebyshev_points(N))
        r = build_interpolant(nodes, chebyshev_weights(N), lambda x: 1 / (z - x))
        direct = np.abs(1 / (z - xs) - r(xs))
        assert_allclose(prototype_error(m, N, z, xs, digits=40), direct, rtol=1e-6)

    def test_zero_at_nodes(self):
        assert prototype_error(PowerPlain(T=1, s=1), 4, 2.0, [0.0, 1.0]).tolist() == [0.0, 0.0]

    def test_chebyshev_rate(self):
        # affine nodes on [0, 1]: z = -1/2 sits at -2 in unit coordinates,
        # whose Bernstein ellipse has parameter 2 + sqrt(3)
        xs = np.linspace(0, 1, 97)[1:-1]
        rate = observed_prototype_log_rate(PowerPlain(T=1, s=1), 120, -0.5, xs)
        assert abs(rate + math.log(2 + math.sqrt(3))) <= 0.02 * math.log(2 + math.sqrt(3))


class TestFitConvergence:
    Ns = np.arange(100, 1001, 100)

    def test_power_law(self):
        fit = fit_convergence([(N, float(N) ** -4) for N in self.Ns])
        assert fit.regime == ALGEBRAIC
        assert abs(fit.slope + 4) <= 0.01 and fit.r2_algebraic == pytest.approx(1.0)

    def test_root_exponential(self):
        Ns = np.arange(4, 161, 4)
        fit = fit_convergence([(N, math.exp(-2 * math.sqrt(N))) for N in Ns])
        assert fit.regime == ROOT_EXPONENTIAL
        assert abs(fit.C - 2) <= 0.01

    def test_planted_digits(self):
        fit = fit_convergence([(N, 3.7 * N**-2.345) for N in self.Ns])
        assert f"{fit.slope:.3g}" == "-2.35"

    def test_floor(self):
        fit = fit_convergence([(N, 1e-16) for N in self.Ns])
        assert fit.regime == FLOOR and fit.used == 0 and math.isnan(fit.slope)

    def test_floor_points_dropped(self):
        recs = [ConvergenceRecord(int(N), float(N) ** -2) for N in self.Ns]
        recs += [ConvergenceRecord(2000, 1e-15), ConvergenceRecord(3000, float("nan"), status="pole")]
        fit = fit_convergence(recs)
        assert fit.used == 10 and abs(fit.slope + 2) < 1e-12

    def test_r2_bounds(self):
        rng = np.random.default_rng(5)
        fit = fit_convergence([(N, math.exp(rng.normal())) for N in self.Ns], floor=0.0)
        assert 0 <= fit.r2_algebraic <= 1 and 0 <= fit.r2_root <= 1
