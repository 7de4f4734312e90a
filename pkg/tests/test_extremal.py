import math
from fractions import Fraction

import numpy as np
import pytest

from spherebl import (
    BalancedType,
    DivergenceReport,
    EdgeSet,
    ExtremalParams,
    GrowthReport,
    Integrand,
    QuadConfig,
    balanced_exponent,
    bump_profile,
    critical_gamma,
    decompose,
    default_eps_grid,
    default_r_grid,
    enumerate_symmetries,
    extremal_function,
    fit_line,
    integrate_sphere,
    local_growth_experiment,
    norm_boundary_scan,
    per_function_exponents,
    radial_oracle,
    sharpness_experiment,
    truncated_norm_slope_prediction,
)
from oracles import truncated_extremal_norm_p

CFG = QuadConfig(samples=200_000, seed=314, shards=4)


class TestExtremalFunction:
    def test_single_block_on_3(self):
        # one block, one free coordinate: f = |x3|^-g + (1-x3^2)^-g
        s = decompose(EdgeSet.of(3, [(1, 2)]))
        f = extremal_function(s, ExtremalParams(gamma=0.5, trunc=0.01))
        pts = np.array([[0.6, 0.0, 0.8], [0.8, 0.6, 0.0]])
        vals = f.eval(pts)
        assert vals[0] == pytest.approx(0.8 ** -0.5 + (1 - 0.64) ** -0.5)
        # second point hits both floors: |x3| -> 0.01, 1-x3^2 stays 1
        assert vals[1] == pytest.approx(0.01 ** -0.5 + 1.0)

    def test_single_block_on_4_two_free(self):
        s = decompose(EdgeSet.of(4, [(1, 2)]))
        g = 0.5
        f = extremal_function(s, ExtremalParams(gamma=g, trunc=0.01))
        pt = np.array([[0.5, 0.5, 0.5, 0.5]])
        expected = (0.5 ** -g) ** 2 + 2 * (1 - 0.25) ** (-g * 3 / 2)
        assert f.eval(pt)[0] == pytest.approx(expected)

    def test_two_blocks_with_free(self):
        # blocks {1,2},{3,4} on n=5, free coordinate 5: tail block 2
        # contributes both the radial power and a boundary term
        s = decompose(EdgeSet.of(5, [(1, 2), (3, 4)]))
        g = 0.3
        f = extremal_function(s, ExtremalParams(gamma=g, trunc=0.01))
        x = np.array([[0.1, 0.2, 0.3, 0.4, math.sqrt(1 - 0.3)]])
        r2 = 0.09 + 0.16
        expected = ((math.sqrt(r2)) ** (-2 * g) * (x[0, 4]) ** (-g)
                    + (1 - r2) ** (-g * 3 / 2) + (1 - x[0, 4] ** 2) ** (-g * 2))
        assert f.eval(x)[0] == pytest.approx(expected)

    def test_truncation_inactive_beyond_floor(self):
        s = decompose(EdgeSet.of(3, [(1, 2)]))
        a = extremal_function(s, ExtremalParams(gamma=0.4, trunc=0.01))
        b = extremal_function(s, ExtremalParams(gamma=0.4, trunc=0.001))
        pts = np.array([[0.6, 0.0, 0.8], [0.0, 0.6, 0.8]])
        assert np.allclose(a.eval(pts), b.eval(pts))

    def test_monotone_in_trunc(self):
        s = decompose(EdgeSet.of(4, [(1, 2), (3, 4)]))
        rng = np.random.default_rng(1)
        pts = rng.standard_normal((500, 4))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        coarse = extremal_function(s, ExtremalParams(gamma=0.3, trunc=0.1)).eval(pts)
        fine = extremal_function(s, ExtremalParams(gamma=0.3, trunc=0.01)).eval(pts)
        assert np.all(fine >= coarse - 1e-12)

    def test_params_validated(self):
        with pytest.raises(ValueError):
            ExtremalParams(gamma=0.0, trunc=0.1)
        with pytest.raises(ValueError):
            ExtremalParams(gamma=0.5, trunc=0.6)

    def test_mc_norm_matches_1d_oracle(self):
        # n=3 single-edge symmetry: the truncated p-norm reduces exactly to
        # a 1-d integral; Monte Carlo must agree within 3 sigma
        s = decompose(EdgeSet.of(3, [(1, 2)]))
        for gamma, p, eps in [(0.25, 2.0, 1 / 64), (0.45, 1.8, 1 / 32)]:
            f = extremal_function(s, ExtremalParams(gamma=gamma, trunc=eps))
            est = integrate_sphere(
                Integrand(n=3, eval=lambda pts, f=f: f.eval(pts) ** p,
                          symmetry_tag=s), CFG)
            exact = truncated_extremal_norm_p(gamma, p, eps)
            assert abs(est.value - exact) <= 3 * est.stderr


class TestRadialOracle:
    def test_exact_critical_values(self):
        assert critical_gamma(BalancedType(3, (2,))) == Fraction(1, 2)
        assert critical_gamma(BalancedType(4, (2, 2))) == Fraction(1, 4)

    def test_exponent_at_critical_is_minus_one(self):
        for t in [BalancedType(3, (2,)), BalancedType(4, (2, 2)), BalancedType(5, (3, 2))]:
            g = critical_gamma(t)
            assert radial_oracle(t, g) == Fraction(-1)

    def test_float_evaluation(self):
        t = BalancedType(3, (2,))
        assert radial_oracle(t, 0.45) == pytest.approx(1 - 0.45 * 4)

    def test_reciprocal_matches_exponent_to_8(self):
        from spherebl import balanced_types_upto
        for t in balanced_types_upto(8):
            assert 1 / critical_gamma(t) == balanced_exponent(t)


class TestNormBoundaryScan:
    GRID = [2.0 ** -k for k in range(4, 10)]

    def test_convergent_slope_zero(self):
        s = decompose(EdgeSet.of(3, [(1, 2)]))
        rep = norm_boundary_scan(s, gamma=0.25, p=2.0, eps_grid=self.GRID, cfg=CFG)
        assert rep.fit_model == "power"
        assert rep.classification == "converged"
        assert abs(rep.slope) <= 0.1

    def test_divergent_slope(self):
        s = decompose(EdgeSet.of(3, [(1, 2)]))
        rep = norm_boundary_scan(s, gamma=0.75, p=2.0, eps_grid=self.GRID, cfg=CFG)
        assert rep.classification == "divergent-power"
        assert abs(rep.slope - (-0.5)) <= 0.1 + 3 * rep.slope_stderr

    def test_slope_matches_1d_oracle(self):
        s = decompose(EdgeSet.of(3, [(1, 2)]))
        rep = norm_boundary_scan(s, gamma=0.75, p=2.0, eps_grid=self.GRID, cfg=CFG)
        oracle_vals = [truncated_extremal_norm_p(0.75, 2.0, e) for e in self.GRID]
        oracle = fit_line(np.log(self.GRID), 0.5 * np.log(oracle_vals))
        assert abs(rep.slope - oracle.slope) <= 0.05

    def test_log_case_uses_log_model(self):
        s = decompose(EdgeSet.of(3, [(1, 2)]))
        rep = norm_boundary_scan(s, gamma=0.5, p=2.0, eps_grid=self.GRID, cfg=CFG)
        assert rep.fit_model == "log"
        assert rep.classification == "divergent-log"

    def test_monotone_series(self):
        s = decompose(EdgeSet.of(3, [(1, 2)]))
        rep = norm_boundary_scan(s, gamma=0.6, p=2.0, eps_grid=self.GRID, cfg=CFG)
        vals = [e.value for e in rep.lhs]  # eps decreasing, shared samples
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_prediction_helper(self):
        assert truncated_norm_slope_prediction(3, 0.25, 2.0) == 0.0
        assert truncated_norm_slope_prediction(3, 0.75, 2.0) == pytest.approx(-0.5)
        with pytest.raises(ValueError):
            truncated_norm_slope_prediction(3, 0.5, 2.0)


class TestSharpness:
    def test_critical_run_detects_divergence(self):
        rep = sharpness_experiment(BalancedType(3, (2,)), p=1.8,
                                   cfg=QuadConfig(samples=300_000, seed=8, shards=4),
                                   gamma=0.5)
        assert rep.rhs_converged
        assert rep.classification == "divergent-log"
        assert rep.slope > 3 * rep.slope_stderr
        assert rep.passed

    def test_subcritical_control_converges(self):
        rep = sharpness_experiment(BalancedType(3, (2,)), p=2.0,
                                   cfg=QuadConfig(samples=300_000, seed=8, shards=4),
                                   gamma=0.45)
        assert rep.classification == "converged"
        assert not rep.passed

    def test_infinite_norms_rejected(self):
        with pytest.raises(ValueError):
            sharpness_experiment(BalancedType(3, (2,)), p=2.5,
                                 cfg=CFG, gamma=0.5)

    def test_default_gamma_is_reciprocal_exponent(self):
        rep = sharpness_experiment(BalancedType(3, (2,)), p=1.8,
                                   cfg=QuadConfig(samples=100_000, seed=3, shards=2),
                                   eps_grid=[2.0 ** -k for k in range(3, 9)])
        assert rep.gamma == pytest.approx(0.5)

    def test_lhs_monotone(self):
        rep = sharpness_experiment(BalancedType(3, (2,)), p=1.8,
                                   cfg=QuadConfig(samples=100_000, seed=3, shards=2),
                                   eps_grid=[2.0 ** -k for k in range(3, 9)])
        vals = [e.value for e in rep.lhs]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_report_round_trip(self):
        rep = sharpness_experiment(BalancedType(3, (2,)), p=1.8,
                                   cfg=QuadConfig(samples=100_000, seed=3, shards=2),
                                   eps_grid=[2.0 ** -k for k in range(3, 9)])
        assert DivergenceReport.from_dict(rep.to_dict()) == rep

    def test_holder_holds_along_divergent_family(self):
        # at p equal to the sharp exponent and critical strength (g*p = 1)
        # both sides blow up together: the inequality holds for every floor
        from spherebl import holder_verify
        t = BalancedType(3, (2,))
        fams = enumerate_symmetries(t)
        for eps in (2.0 ** -4, 2.0 ** -8, 2.0 ** -12):
            fs = [extremal_function(s, ExtremalParams(gamma=0.5, trunc=eps))
                  for s in fams]
            rec = holder_verify(fams, fs, [2.0] * 3, CFG)
            assert rec.passed, eps


class TestTruncatedNormRates:
    def test_ratio_approaches_grid_power(self):
        # successive truncated norms along a dyadic grid approach the ratio
        # 2^(gp-1) in the divergent regime (n=3, p=2) and 1 when convergent;
        # stay above the boundary-slab resolution (samples * eps^2 >> 1)
        s = decompose(EdgeSet.of(3, [(1, 2)]))
        cfg = QuadConfig(samples=1_000_000, seed=314, shards=4)
        grid = [2.0 ** -k for k in range(4, 8)]
        rep = norm_boundary_scan(s, gamma=0.75, p=2.0, eps_grid=grid, cfg=cfg)
        norms = [e.value ** 0.5 for e in rep.lhs]
        tail_ratio = norms[-1] / norms[-2]
        assert abs(tail_ratio - 2.0 ** 0.5) <= 0.1 * 2.0 ** 0.5
        rep0 = norm_boundary_scan(s, gamma=0.25, p=2.0, eps_grid=grid, cfg=cfg)
        norms0 = [e.value ** 0.5 for e in rep0.lhs]
        assert abs(norms0[-1] / norms0[-2] - 1.0) <= 0.01


class TestLocalGrowth:
    def test_capped_power_slope_in_window(self):
        fams = enumerate_symmetries(BalancedType(3, (2,)))
        exps = per_function_exponents(fams)
        rep = local_growth_experiment(fams, exps, eta=0.1,
                                      r_grid=default_r_grid(),
                                      cfg=QuadConfig(samples=300_000, seed=21, shards=4))
        assert rep.delta_target == Fraction(3, 2)
        # asymptotic slope is delta - eta * sum(1/p_J) = 1.35
        assert 1.2 <= rep.fitted_slope <= 1.6
        assert rep.fitted_slope <= float(rep.delta_target) + 3 * rep.slope_stderr

    def test_bump_saturates(self):
        # compact support: the integral stops growing once R covers it;
        # keep R moderate so uniform sampling still resolves the support
        fams = enumerate_symmetries(BalancedType(3, (2,)))
        exps = per_function_exponents(fams)
        rep = local_growth_experiment(
            fams, exps, eta=0.1, r_grid=[2.0 ** k for k in range(0, 6)],
            cfg=QuadConfig(samples=400_000, seed=4, shards=2),
            profiles=[bump_profile(2.0)] * 3)
        assert abs(rep.fitted_slope) <= 0.05 + 3 * rep.slope_stderr

    def test_report_round_trip(self):
        fams = enumerate_symmetries(BalancedType(3, (2,)))
        exps = per_function_exponents(fams)
        rep = local_growth_experiment(fams, exps, eta=0.2,
                                      r_grid=[1.0, 2.0, 4.0, 8.0, 16.0],
                                      cfg=QuadConfig(samples=10_000, seed=4, shards=2))
        assert GrowthReport.from_dict(rep.to_dict()) == rep


def test_default_grids():
    eps = default_eps_grid()
    assert eps[0] == 0.125 and eps[-1] == 2.0 ** -20 and len(eps) == 18
    rs = default_r_grid()
    assert rs[0] == 1.0 and rs[-1] == 1024.0 and len(rs) == 11
