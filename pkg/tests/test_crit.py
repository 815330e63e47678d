import numpy as np
import pytest

from fermifid.errors import (DegenerateEndpointError, ParameterError,
                             SingularPointError, StencilCrossingError,
                             WindowError)
from fermifid.crit import (SweepSpec, analytic_hessian_cyclic,
                           energy_derivatives, first_order_boundary,
                           h_analytic_cyclic, h_asymptotic, hessian_fd,
                           peak_scan, t_prime_zero)
from fermifid.model import Boundary, ModelParams, Sign, build
from fermifid.solver import canonical_decompose, polar_T


def fc(L, mu, gamma):
    return ModelParams(L=L, r=L // 2, mu=mu, gamma=gamma,
                       boundary=Boundary.CYCLIC, sign=Sign.S4)


class TestHessianFd:
    def test_deep_phase_matches_asymptotic(self):
        # at (2, 1.5) the closed-form sum happens to coincide with the
        # thermodynamic-limit expression, so the FD value must land on it
        L = 1001
        h = hessian_fd(fc(L, 2.0, 1.5)).h_crit
        target = h_asymptotic(L, 2.0, 1.5)
        assert abs(h / target - 1.0) < 1e-2

    def test_matches_analytic(self):
        for mu, gamma in [(1.5, 1.0), (0.3, 0.8), (2.0, 1.5)]:
            h_fd = hessian_fd(fc(101, mu, gamma), delta=1e-4).h_crit
            h_an, _ = h_analytic_cyclic(101, mu, gamma)
            assert abs(h_fd / h_an - 1.0) < 1e-4

    def test_cross_term_orderings_agree_exactly(self):
        # the 4-point cross stencil is symmetric under swapping the two
        # displacement axes; floating-point addition commutes
        from fermifid.crit import _CirculantProbe
        probe = _CirculantProbe(fc(31, 1.7, 0.9))
        center = probe.state(0.0, 0.0)
        d = 1e-4
        F = {s: probe.fid(center, probe.state(s[0] * d, s[1] * d))
             for s in [(1, 1), (-1, -1), (1, -1), (-1, 1)]}
        ab = (F[(1, 1)] + F[(-1, -1)] - (F[(1, -1)] + F[(-1, 1)])) / (4 * d * d)
        ba = (F[(1, 1)] + F[(-1, -1)] - (F[(-1, 1)] + F[(1, -1)])) / (4 * d * d)
        assert ab == ba

    def test_richardson_refines(self):
        h_plain = hessian_fd(fc(101, 1.5, 1.0), delta=1e-3).h_crit
        h_rich = hessian_fd(fc(101, 1.5, 1.0), delta=1e-3,
                            richardson=True).h_crit
        h_exact, _ = h_analytic_cyclic(101, 1.5, 1.0)
        assert abs(h_rich - h_exact) < abs(h_plain - h_exact)

    def test_stencil_crossing_detected(self):
        # even L: first-order line at mu = 1 sits inside the stencil
        with pytest.raises(StencilCrossingError):
            hessian_fd(fc(8, 1.00005, 1.2), delta=1e-4)

    def test_degenerate_centre_detected(self):
        with pytest.raises(DegenerateEndpointError):
            hessian_fd(fc(8, 1.0, 1.2), delta=1e-4)

    def test_h_is_nonpositive(self):
        for mu, gamma in [(2.0, 1.0), (0.5, 0.3), (1.0, 1.5), (-1.0, 0.7)]:
            assert hessian_fd(fc(51, mu, gamma)).h_crit <= 0.0

    def test_dense_free_ends_path(self):
        p = ModelParams(L=24, r=23, mu=1.3, gamma=1.2,
                        boundary=Boundary.FREE_ENDS, sign=Sign.S4)
        h = hessian_fd(p)
        assert h.h_crit < 0.0
        assert h.d2_mumu < 0.0 and h.d2_gamgam < 0.0


class TestAnalyticCyclic:
    def test_other_eigenvalue_is_zero_and_radial(self):
        for mu, gamma in [(1.5, 1.0), (0.4, -0.8), (2.5, 0.6)]:
            hz = analytic_hessian_cyclic(201, mu, gamma)
            tr = hz.d2_mumu + hz.d2_gamgam
            lam_max = tr - hz.h_crit
            assert abs(lam_max) <= 1e-12 * abs(hz.h_crit)
            radial = np.array([mu - 1.0, gamma])
            radial /= np.linalg.norm(radial)
            assert abs(abs(radial @ hz.zero_eigvec) - 1.0) < 1e-10

    def test_gamma_zero_reduction(self):
        # on the gamma = 0 line all paired moduli are |mu-1|
        from fermifid.solver import _fc_gamma_slope
        L, mu = 101, 2.5
        h, S = h_analytic_cyclic(L, mu, 0.0)
        c = _fc_gamma_slope(L)[:(L - 1) // 2]
        assert S == pytest.approx(np.sum(c ** 2) / (mu - 1.0) ** 4, rel=1e-12)
        assert h == pytest.approx(-0.25 * (mu - 1.0) ** 2 * S, rel=1e-12)

    def test_singular_point_rejected(self):
        with pytest.raises(SingularPointError):
            h_analytic_cyclic(101, 1.0, 0.0)
        with pytest.raises(SingularPointError):
            h_analytic_cyclic(8, 1.0, 0.9)  # even L: pair vanishes at mu = 1


class TestAsymptotic:
    def test_direct_values(self):
        assert h_asymptotic(1001, 1.0, 1.5) == pytest.approx(-1002001 / 54)
        assert h_asymptotic(1001, 3.0, 0.0) == pytest.approx(-(1001 / 2) ** 2 / 8)
        L, mu, gamma = 801, 2.0, 1.5
        expected = -(L / 16) * (1 + gamma ** 2) / (gamma * (1 + gamma) ** 2)
        assert h_asymptotic(L, mu, gamma) == pytest.approx(expected)

    def test_ratio_tends_to_one(self):
        errs = [abs(h_analytic_cyclic(L, 1.0, 1.5)[0]
                    / h_asymptotic(L, 1.0, 1.5) - 1.0)
                for L in (101, 401, 1601)]
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 2e-3

    def test_singular_point(self):
        with pytest.raises(SingularPointError):
            h_asymptotic(101, 1.0, 0.0)


class TestFirstOrderBoundary:
    def test_L2_unit_circle(self):
        for gamma in (0.0, 0.3, 0.6, 0.95):
            sweep = SweepSpec("mu", 0.1, 1.5, 40, gamma)
            pts = first_order_boundary(2, Boundary.FREE_ENDS, sweep)
            assert len(pts) == 1
            assert pts[0].mu == pytest.approx(np.sqrt(1 - gamma ** 2),
                                              abs=1e-8)
            assert pts[0].parity_below != pts[0].parity_above

    def test_L3_closed_form_curve(self):
        # zeros of det Z at L = 3 obey gamma^2 = -(mu-1)^2 (mu+2)/(3 mu - 2)
        for gamma in (0.8, 1.5, 2.5):
            sweep = SweepSpec("mu", -2.5, 0.66, 300, gamma)
            pts = first_order_boundary(3, Boundary.FREE_ENDS, sweep)
            assert pts, f"no crossing found at gamma={gamma}"
            for p in pts:
                implied = -(p.mu - 1) ** 2 * (p.mu + 2) / (3 * p.mu - 2)
                assert implied == pytest.approx(gamma ** 2, abs=1e-6)

    def test_cyclic_even_fully_connected(self):
        L = 6
        sweep = SweepSpec("mu", -L - 2.0, 3.0, 400, 1.5)
        pts = first_order_boundary(L, Boundary.CYCLIC, sweep)
        values = sorted(p.mu for p in pts)
        assert len(values) == 2
        assert values[0] == pytest.approx(1.0 - L, abs=1e-8)
        assert values[1] == pytest.approx(1.0, abs=1e-8)

    def test_no_crossing_is_empty(self):
        sweep = SweepSpec("mu", 1.5, 3.0, 50, 1.5)
        assert first_order_boundary(9, Boundary.CYCLIC, sweep) == []


class TestPeakScan:
    def test_cyclic_peak_at_one(self):
        series = peak_scan([101, 201], 1.5, (0.8, 1.2), grid_points=41,
                           collapse_points=0)
        assert np.allclose(series.peak_positions, 1.0, atol=1e-7)
        assert series.crossings == [[], []]

    def test_cyclic_depth_scales_quadratically(self):
        series = peak_scan([101, 201, 401, 801], 1.5, (0.9, 1.1),
                           grid_points=41, collapse_points=0)
        slope = np.polyfit(np.log(series.sizes),
                           np.log(-series.peak_depths), 1)[0]
        assert slope == pytest.approx(2.0, abs=0.05)

    def test_collapse_deviation_shrinks(self):
        series = peak_scan([101, 401, 801], 1.5, (0.9, 1.1), grid_points=21,
                           collapse_points=41, collapse_halfwidth=20.0)
        ref = series.collapsed[-1][1]
        scale = np.max(np.abs(ref))
        devs = [np.max(np.abs(y - ref)) / scale for _, y in series.collapsed]
        assert devs[0] > devs[1] > devs[2]
        assert devs[1] < 0.01  # L = 401 already collapses to the percent level

    def test_window_without_minimum(self):
        with pytest.raises(WindowError):
            peak_scan([101], 1.5, (1.5, 2.5), grid_points=21,
                      collapse_points=0)

    def test_free_ends_small(self):
        series = peak_scan([40], 1.5, (0.9, 1.02),
                           boundary=Boundary.FREE_ENDS, grid_points=9,
                           xtol=1e-4, collapse_points=0)
        assert 0.95 < series.peak_positions[0] < 1.0
        assert series.peak_depths[0] < -50.0


class TestEnergyDerivatives:
    def test_cross_derivative_discontinuity(self):
        # d2 E0/L / dmu dgamma tends to +-(1/pi)/(mu-1) as gamma -> 0+-
        L, mu = 2001, 3.0
        target = 1.0 / np.pi / (mu - 1.0)
        for s in (+1.0, -1.0):
            d = energy_derivatives(L, mu, s * 0.05, step=0.02)
            assert d.d2_mugam == pytest.approx(s * target, rel=0.05)

    def test_mu_axis_is_flat_above_one(self):
        d = energy_derivatives(101, 3.0, 0.0, step=0.01)
        assert d.d2_mumu == pytest.approx(0.0, abs=1e-12)
        assert d.d2_mugam == pytest.approx(0.0, abs=1e-12)
        assert d.d2_gamgam < 0.0  # pairing lowers the energy quadratically

    def test_log_divergence_at_mu_one(self):
        vals = [energy_derivatives(L, 1.0, 1.5, step=1e-3).d2_mumu
                for L in (101, 201, 401)]
        lnL = np.log([101, 201, 401])
        resid = np.polyfit(lnL, vals, 1, full=True)[1][0]
        ss = np.sum((vals - np.mean(vals)) ** 2)
        assert 1 - resid / ss > 0.99

    def test_crossing_guard(self):
        with pytest.raises(StencilCrossingError):
            energy_derivatives(8, 1.0, 1.5, step=0.01)


class TestTPrimeZero:
    def test_L2_exact(self):
        tp = t_prime_zero(2, 2.0)
        assert np.allclose(tp.matrix, [[0.0, -0.5], [0.5, 0.0]])
        assert tp.trace_sq == pytest.approx(-0.5, abs=1e-14)
        assert tp.h_gamma0 == pytest.approx(-1 / 16, abs=1e-14)

    def test_trace_identity(self):
        for L in (2, 7, 24, 41, 60):
            for mu in (1.5, 2.0, 5.0):
                tp = t_prime_zero(L, mu)
                direct = np.trace(tp.matrix @ tp.matrix)
                assert abs(direct - tp.trace_sq) <= 1e-10 * abs(tp.trace_sq)

    def test_matches_numerical_derivative(self):
        for L, mu in [(12, 1.5), (40, 2.0)]:
            d = 1e-5
            ms = []
            for s in (+d, -d):
                p = ModelParams(L=L, r=L - 1, mu=mu, gamma=s,
                                boundary=Boundary.FREE_ENDS, sign=Sign.S4)
                m = build(p)
                ms.append(polar_T(canonical_decompose(m), m).T)
            numerical = (ms[0] - ms[1]) / (2 * d)
            assert np.max(np.abs(numerical - t_prime_zero(L, mu).matrix)) < 1e-6

    def test_tdl_limit(self):
        mu = 2.0
        ratios = [t_prime_zero(L, mu).h_gamma0
                  / (-(L / (mu - 1.0)) ** 2 / 24.0)
                  for L in (200, 800, 3200)]
        assert abs(ratios[-1] - 1.0) < 2e-3
        assert abs(ratios[0] - 1.0) > abs(ratios[-1] - 1.0)

    def test_domain_guard(self):
        with pytest.raises(ParameterError):
            t_prime_zero(10, 1.0)
        with pytest.raises(ParameterError):
            t_prime_zero(10, 0.5)
