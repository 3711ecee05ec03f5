"""Tests for smoothnum.bias: the pinned-saddle curve, the normalized
deviation, the zero-sum model, and Monte Carlo logarithmic densities.
"""

import math

import numpy as np
import pytest

from smoothnum import bias, gfactor, specfun
from smoothnum.errors import DomainError, RangeError


# ----------------------------------------------------------------------
# x_of_y and the pinned saddle
# ----------------------------------------------------------------------

def test_x_of_y_arithmetic():
    # (10^4)^(1-0.75) = 10, so log x = (10-1)/0.25 = 36 exactly.
    assert bias.x_of_y(1e4, 0.75) == 36.0
    assert bias.x_of_y(1.0, 0.75) == 0.0


def test_saddle_pinned_on_curve(rho_table):
    # The curve is built so that beta(x(y), y) = beta0 identically.
    for y, beta0 in ((1e4, 0.75), (500.0, 0.7), (2718.28, 0.8)):
        x = math.exp(bias.x_of_y(y, beta0))
        got = specfun.saddle(x, y, rho_table).beta
        assert got == pytest.approx(beta0, abs=1e-10)


# ----------------------------------------------------------------------
# normalized_deviation / compute_point
# ----------------------------------------------------------------------

def test_normalized_deviation_frozen_value(pt100k, rho_table):
    # Regression pin at y=800, beta0=0.75 (exact Psi = 1203943 there).
    dev = bias.normalized_deviation(800.0, 0.75, pt100k, rho_table)
    assert dev == pytest.approx(0.8894134582878971, rel=1e-12)


def test_compute_point_internal_consistency(pt100k, rho_table):
    p = bias.compute_point(800.0, 0.75, pt100k, rho_table)
    scale = 800.0 ** (0.75 - 0.5) * math.log(800.0)
    assert p.deviation == pytest.approx((p.ratio_uncorrected - 1.0) * scale, rel=1e-12)
    assert p.ratio_corrected == pytest.approx(p.ratio_uncorrected / p.g, rel=1e-12)
    assert p.x == pytest.approx(math.exp(p.log_x), rel=1e-15)
    assert p.psi == int(p.psi)
    assert math.isnan(p.model)  # no zero table passed


def test_compute_point_model_field(pt100k, rho_table, zeros10k):
    p = bias.compute_point(800.0, 0.75, pt100k, rho_table, zeros=zeros10k, big_t=1000.0)
    assert p.model == bias.model_rhs(800.0, 0.75, 1000.0, zeros10k)


# ----------------------------------------------------------------------
# model_rhs
# ----------------------------------------------------------------------

def test_model_rhs_empty_sum(zeros10k):
    # T below the first ordinate leaves only 1/(2 beta0 - 1).
    assert bias.model_rhs(100.0, 0.75, 10.0, zeros10k) == 2.0
    assert bias.model_rhs(100.0, 0.6, 10.0, zeros10k) == pytest.approx(5.0, rel=1e-15)


def test_model_rhs_is_float(zeros10k):
    val = bias.model_rhs(1234.5, 0.75, 5000.0, zeros10k)
    assert isinstance(val, float)
    assert math.isfinite(val)


def test_model_rhs_oscillation_averages_out(zeros10k):
    # The zero-sum part oscillates in log y; its average over a long
    # log-uniform grid is two orders below the constant term 2.
    ys = np.exp(np.linspace(math.log(2.0), math.log(1e6), 2000))
    vals = np.array([bias.model_rhs(float(y), 0.75, 1000.0, zeros10k) for y in ys])
    assert abs(np.mean(vals - 2.0)) <= 0.02


def test_model_rhs_matches_psiover_route(pt100k, rho_table, zeros10k):
    # (psiover_rhs - 1) * y^(beta0 - 1/2) * log y telescopes to exactly
    # the model_rhs formula when beta = beta0 on the curve.
    y, beta0 = 1e4, 0.75
    x = math.exp(bias.x_of_y(y, beta0))
    pv = gfactor.psiover_rhs(x, y, 1000.0, zeros10k, pt100k, rho_table)
    scaled = (pv - 1.0) * y ** (beta0 - 0.5) * math.log(y)
    assert abs(scaled - bias.model_rhs(y, beta0, 1000.0, zeros10k)) <= 1e-9


def test_model_rhs_range_error(zeros10k):
    with pytest.raises(RangeError):
        bias.model_rhs(100.0, 0.75, 2e4, zeros10k)


# ----------------------------------------------------------------------
# BiasConfig / DensityEstimate plumbing
# ----------------------------------------------------------------------

def test_bias_config_validation():
    with pytest.raises(DomainError):
        bias.BiasConfig(beta0=0.5, T=100.0, seed=1, n_samples=10**4)
    with pytest.raises(DomainError):
        bias.BiasConfig(beta0=1.0, T=100.0, seed=1, n_samples=10**4)
    with pytest.raises(RangeError):
        bias.BiasConfig(beta0=0.75, T=100.0, seed=1, n_samples=999)


def test_phase_matrix_counter_based_chunking():
    # Sample j's phases must not depend on which chunk produced them.
    whole = bias._phase_matrix(9, 0, 12, 7)
    tail = bias._phase_matrix(9, 5, 7, 7)
    assert np.array_equal(whole[5:], tail)
    assert whole.shape == (12, 7)
    assert np.all(whole >= 0.0) and np.all(whole < 2.0 * math.pi)


def test_li_density_no_zeros_is_one(zeros10k):
    cfg = bias.BiasConfig(beta0=0.75, T=10.0, seed=5, n_samples=10**4)
    est = bias.li_density(cfg, zeros10k)
    assert est.density == 1.0
    assert est.stderr == 0.0
    assert est.n_samples == 10**4
    assert est.seed == 5


def test_li_density_deterministic_and_chunk_independent(zeros10k, monkeypatch):
    g100 = float(zeros10k.gammas[99])
    cfg = bias.BiasConfig(beta0=0.75, T=g100, seed=3, n_samples=10**4)
    first = bias.li_density(cfg, zeros10k)
    second = bias.li_density(cfg, zeros10k)
    assert first == second
    monkeypatch.setattr(bias, "_CHUNK_SAMPLES", 977)
    rechunked = bias.li_density(cfg, zeros10k)
    assert rechunked == first


def test_li_density_monotone_in_beta0(zeros10k):
    # Larger beta0 shrinks the constant term but shrinks the oscillation
    # weights too; the density must not decrease (ties allowed -- at this
    # T every draw is positive for all three exponents).
    g100 = float(zeros10k.gammas[99])
    densities = []
    for beta0 in (0.6, 0.75, 0.9):
        cfg = bias.BiasConfig(beta0=beta0, T=g100, seed=11, n_samples=10**6)
        densities.append(bias.li_density(cfg, zeros10k).density)
    assert densities[2] >= densities[0]
    assert densities[1] >= densities[0]


def test_li_density_sanity_window(zeros10k):
    g100 = float(zeros10k.gammas[99])
    for beta0, calibration in ((0.75, False), (0.75, True), (0.6, False)):
        cfg = bias.BiasConfig(beta0=beta0, T=g100, seed=2, n_samples=10**4)
        est = bias.li_density(cfg, zeros10k, calibration=calibration)
        assert est.density - 3.0 * est.stderr >= -0.01
        assert est.density + 3.0 * est.stderr <= 1.01


def test_li_density_calibration_smoke(zeros10k):
    # Small calibration run; the full pinned-seed run with 1000
    # ordinates and n=1e6 lives in the acceptance suite.
    g100 = float(zeros10k.gammas[99])
    cfg = bias.BiasConfig(beta0=0.75, T=g100, seed=16, n_samples=10**5)
    est = bias.li_density(cfg, zeros10k, calibration=True)
    assert est.density >= 0.999


def test_li_density_range_error(zeros10k):
    cfg = bias.BiasConfig(beta0=0.75, T=2e4, seed=1, n_samples=10**4)
    with pytest.raises(RangeError):
        bias.li_density(cfg, zeros10k)


# ----------------------------------------------------------------------
# empirical density along the curve
# ----------------------------------------------------------------------

def test_empirical_log_density_single_point(pt100k, rho_table):
    est = bias.empirical_log_density([1000.0], 0.75, pt100k, rho_table)
    assert est.density in (0.0, 1.0)
    assert est.stderr == 0.0
    assert est.n_samples == 1


def test_empirical_density_and_model_agreement(pt100k, rho_table, zeros10k):
    # Desk-scale slice of the positivity experiment: the exact count
    # stays above the de Bruijn value on this stretch of the curve, and
    # the zero-sum model gets every sign right (measured 1.0).
    grid = list(np.exp(np.linspace(math.log(1000.0), math.log(2000.0), 5)))
    est = bias.empirical_log_density(grid, 0.75, pt100k, rho_table)
    assert est.density > 0.5
    agreement = bias.sign_agreement(grid, 0.75, 1000.0, zeros10k, pt100k, rho_table)
    assert agreement >= 0.6
